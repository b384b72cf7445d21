#include "qmf/metrics.hpp"

#include <cmath>
#include <limits>

namespace qmf {
namespace {

constexpr int kWindow = 11;
constexpr double kC1 = 6.5025;   // (0.01 * 255)^2
constexpr double kC2 = 58.5225;  // (0.03 * 255)^2

void check_pair(const RgbImage& a, const RgbImage& b) {
  if (a.height < 1 || a.width < 1)
    throw std::invalid_argument("metrics: empty image");
  if (a.height != b.height || a.width != b.width)
    throw std::invalid_argument("metrics: image sizes differ");
  const std::size_t expect = static_cast<std::size_t>(a.height) * a.width * 3;
  if (a.pixels.size() != expect || b.pixels.size() != expect)
    throw std::invalid_argument("metrics: malformed image");
}

Vector gaussian_window() {
  Vector g(kWindow);
  const double sigma = 1.5;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - (kWindow - 1) / 2.0;
    g(i) = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return g / g.sum();
}

// separable valid-mode filtering: output shrinks by window - 1 per axis
Matrix filter_valid(const Matrix& m, const Vector& g) {
  const Index h = m.rows();
  const Index w = m.cols();
  Matrix rows(h, w - kWindow + 1);
  for (Index i = 0; i < h; ++i) {
    for (Index j = 0; j + kWindow <= w; ++j) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += m(i, j + k) * g(k);
      rows(i, j) = acc;
    }
  }
  Matrix out(h - kWindow + 1, rows.cols());
  for (Index j = 0; j < rows.cols(); ++j) {
    for (Index i = 0; i + kWindow <= h; ++i) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += rows(i + k, j) * g(k);
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

Matrix luma_plane(const RgbImage& image) {
  if (image.height < 1 || image.width < 1 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.height) * image.width * 3)
    throw std::invalid_argument("metrics: malformed image");
  Matrix y(image.height, image.width);
  for (int i = 0; i < image.height; ++i)
    for (int j = 0; j < image.width; ++j)
      y(i, j) = 0.299 * image.at(i, j, 0) + 0.587 * image.at(i, j, 1) +
                0.114 * image.at(i, j, 2);
  return y;
}

double mse(const RgbImage& a, const RgbImage& b) {
  check_pair(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.pixels.size());
}

double psnr(const RgbImage& a, const RgbImage& b) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / err);
}

double ssim(const RgbImage& a, const RgbImage& b) {
  check_pair(a, b);
  if (a.height < kWindow || a.width < kWindow)
    throw std::invalid_argument("ssim: image smaller than the window");
  const Matrix la = luma_plane(a);
  const Matrix lb = luma_plane(b);
  const Vector g = gaussian_window();

  const Matrix mu_a = filter_valid(la, g);
  const Matrix mu_b = filter_valid(lb, g);
  const Matrix var_a =
      filter_valid(la.cwiseProduct(la), g) - mu_a.cwiseProduct(mu_a);
  const Matrix var_b =
      filter_valid(lb.cwiseProduct(lb), g) - mu_b.cwiseProduct(mu_b);
  const Matrix cov =
      filter_valid(la.cwiseProduct(lb), g) - mu_a.cwiseProduct(mu_b);

  double acc = 0.0;
  for (Index j = 0; j < mu_a.cols(); ++j) {
    for (Index i = 0; i < mu_a.rows(); ++i) {
      const double num = (2.0 * mu_a(i, j) * mu_b(i, j) + kC1) *
                         (2.0 * cov(i, j) + kC2);
      const double den =
          (mu_a(i, j) * mu_a(i, j) + mu_b(i, j) * mu_b(i, j) + kC1) *
          (var_a(i, j) + var_b(i, j) + kC2);
      acc += num / den;
    }
  }
  return acc / static_cast<double>(mu_a.size());
}

}  // namespace qmf
