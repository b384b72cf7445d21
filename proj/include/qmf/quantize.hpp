#pragma once

#include "qmf/types.hpp"

namespace qmf {

// uniform 8-bit affine quantization of one real factor matrix:
// value ~ scale * code + zero_point
struct QuantizedFactor {
  ByteMatrix codes;
  double scale = 0.0;
  double zero_point = 0.0;
};

// min-max quantizer over the whole matrix; a constant matrix yields scale 0
// and all-zero codes
QuantizedFactor quantize_uniform(const Matrix& values);

Matrix dequantize(const QuantizedFactor& factor);

}  // namespace qmf
