#include "qmf/quantize.hpp"

#include <cmath>

namespace qmf {

QuantizedFactor quantize_uniform(const Matrix& values) {
  if (values.size() == 0)
    throw std::invalid_argument("quantize_uniform: empty matrix");
  if (!values.allFinite())
    throw std::invalid_argument("quantize_uniform: non-finite entries");
  QuantizedFactor out;
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  out.zero_point = lo;
  out.scale = (hi - lo) / 255.0;
  out.codes.resize(values.rows(), values.cols());
  if (out.scale == 0.0) {
    out.codes.setZero();
    return out;
  }
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) {
      const double code = std::round((values(i, j) - lo) / out.scale);
      out.codes(i, j) =
          static_cast<std::uint8_t>(code < 0.0 ? 0.0 : (code > 255.0 ? 255.0 : code));
    }
  }
  return out;
}

Matrix dequantize(const QuantizedFactor& factor) {
  if (factor.codes.size() == 0)
    throw std::invalid_argument("dequantize: empty matrix");
  return (factor.codes.cast<double>().array() * factor.scale +
          factor.zero_point)
      .matrix();
}

}  // namespace qmf
