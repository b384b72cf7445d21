#include "support/test_images.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

namespace qmf::testing {
namespace {

using std::numbers::pi;

// adds amp * cos(kx * x + ky * y + phase) through two rank-1 outer products
void add_wave(Matrix& field, double kx, double ky, double phase, double amp) {
  const Index h = field.rows();
  const Index w = field.cols();
  Vector cy(h), sy(h), cx(w), sx(w);
  for (Index y = 0; y < h; ++y) {
    cy(y) = std::cos(ky * y + phase);
    sy(y) = std::sin(ky * y + phase);
  }
  for (Index x = 0; x < w; ++x) {
    cx(x) = std::cos(kx * x);
    sx(x) = std::sin(kx * x);
  }
  field.noalias() += amp * (cy * cx.transpose());
  field.noalias() -= amp * (sy * sx.transpose());
}

// axis-aligned gaussian blob as an outer product
void add_blob(Matrix& field, double cy, double cx, double ry, double rx,
              double amp) {
  const Index h = field.rows();
  const Index w = field.cols();
  Vector gy(h), gx(w);
  for (Index y = 0; y < h; ++y) {
    const double d = (y - cy) / ry;
    gy(y) = std::exp(-d * d);
  }
  for (Index x = 0; x < w; ++x) {
    const double d = (x - cx) / rx;
    gx(x) = std::exp(-d * d);
  }
  field.noalias() += amp * (gy * gx.transpose());
}

// random plane waves with amplitude falling off by octave, the usual smooth
// 1/f-style field
Matrix band_field(std::mt19937& rng, Index h, Index w, int first_octave,
                  int last_octave, double base_amp, double rolloff) {
  Matrix field = Matrix::Zero(h, w);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double max_dim = static_cast<double>(std::max(h, w));
  for (int o = first_octave; o <= last_octave; ++o) {
    const double cycles = std::pow(2.0, o);
    const double amp = base_amp / std::pow(cycles + 1.0, rolloff);
    const int waves = 5 + 3 * o;
    for (int i = 0; i < waves; ++i) {
      const double theta = 2.0 * pi * uni(rng);
      const double jitter = cycles * (0.7 + 0.6 * uni(rng));
      const double k = 2.0 * pi * jitter / max_dim;
      add_wave(field, k * std::cos(theta), k * std::sin(theta),
               2.0 * pi * uni(rng), amp * (0.5 + uni(rng)));
    }
  }
  return field;
}

// many flat-amplitude high-frequency waves, normalized to roughly unit sigma
Matrix texture_field(std::mt19937& rng, Index h, Index w) {
  Matrix field = Matrix::Zero(h, w);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double max_dim = static_cast<double>(std::max(h, w));
  const int waves = 160;
  const double amp = std::sqrt(2.0 / waves);
  for (int i = 0; i < waves; ++i) {
    const double theta = 2.0 * pi * uni(rng);
    const double cycles = 24.0 + 100.0 * uni(rng);
    const double k = 2.0 * pi * cycles / max_dim;
    add_wave(field, k * std::cos(theta), k * std::sin(theta),
             2.0 * pi * uni(rng), amp);
  }
  return field;
}

void normalize_range(Matrix& field, double lo, double hi) {
  const double fmin = field.minCoeff();
  const double fmax = field.maxCoeff();
  const double span = fmax > fmin ? fmax - fmin : 1.0;
  field = ((field.array() - fmin) / span * (hi - lo) + lo).matrix();
}

struct Recipe {
  double texture_sigma;  // std-dev of added fine texture, in luma counts
  int blobs;
  double chroma_amp;
  double gradient;
};

constexpr Recipe kRecipes[6] = {
    {23.0, 3, 16.0, 36.0}, {24.0, 5, 22.0, 22.0}, {25.0, 4, 18.0, 28.0},
    {28.0, 6, 14.0, 16.0}, {23.0, 8, 26.0, 30.0}, {24.0, 2, 20.0, 44.0},
};

RgbImage render(int kind, int height, int width) {
  const Recipe& recipe = kRecipes[((kind % 6) + 6) % 6];
  std::mt19937 rng(1000003u * static_cast<unsigned>(kind + 1) + 17u);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Index h = height;
  const Index w = width;

  Matrix luma = band_field(rng, h, w, 0, 4, 60.0, 1.1);
  for (int i = 0; i < recipe.blobs; ++i) {
    add_blob(luma, h * uni(rng), w * uni(rng), h * (0.06 + 0.2 * uni(rng)),
             w * (0.06 + 0.2 * uni(rng)), (uni(rng) - 0.45) * 90.0);
  }
  // broad illumination ramp
  Vector ramp_y(h), ramp_x(w);
  for (Index y = 0; y < h; ++y) ramp_y(y) = static_cast<double>(y) / std::max<Index>(h - 1, 1);
  for (Index x = 0; x < w; ++x) ramp_x(x) = static_cast<double>(x) / std::max<Index>(w - 1, 1);
  const double gdir = uni(rng) - 0.5;
  luma.noalias() += recipe.gradient * (ramp_y * Vector::Ones(w).transpose());
  luma.noalias() += recipe.gradient * gdir * (Vector::Ones(h) * ramp_x.transpose());

  normalize_range(luma, 20.0, 235.0);
  luma.noalias() += recipe.texture_sigma * texture_field(rng, h, w);

  Matrix cb = band_field(rng, h, w, 0, 2, recipe.chroma_amp * 3.0, 1.0);
  Matrix cr = band_field(rng, h, w, 0, 2, recipe.chroma_amp * 3.0, 1.0);
  normalize_range(cb, -recipe.chroma_amp, recipe.chroma_amp);
  normalize_range(cr, -recipe.chroma_amp, recipe.chroma_amp);

  RgbImage image(height, width);
  for (Index i = 0; i < h; ++i) {
    for (Index j = 0; j < w; ++j) {
      const double y = luma(i, j);
      const double u = cb(i, j);
      const double v = cr(i, j);
      const auto to_byte = [](double value) {
        const double r = std::round(value);
        return static_cast<std::uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
      };
      image.at(static_cast<int>(i), static_cast<int>(j), 0) =
          to_byte(y + 1.402 * v);
      image.at(static_cast<int>(i), static_cast<int>(j), 1) =
          to_byte(y - 0.344136 * u - 0.714136 * v);
      image.at(static_cast<int>(i), static_cast<int>(j), 2) =
          to_byte(y + 1.772 * u);
    }
  }
  return image;
}

}  // namespace

RgbImage make_natural_image(int kind, int height, int width) {
  return render(kind, height, width);
}

RgbImage make_small_image(int kind, int height, int width) {
  return render(kind + 100, height, width);
}

std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  const auto dir = base / ("qmf_test_" + tag + "_" +
                           std::to_string(counter.fetch_add(1)) + "_" +
                           std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace qmf::testing
