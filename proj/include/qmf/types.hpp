#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace qmf {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;
using IntVector = Eigen::VectorXi;
using ByteMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// inclusive integer interval for factor entries; must fit in a signed byte so
// containers can store entries and endpoints directly
struct Bounds {
  int alpha = -16;
  int beta = 15;

  Bounds() = default;
  Bounds(int alpha_, int beta_) : alpha(alpha_), beta(beta_) {
    if (alpha > beta) throw std::invalid_argument("bounds: alpha exceeds beta");
    if (alpha < -128 || beta > 127)
      throw std::invalid_argument("bounds: outside signed 8-bit range");
  }

  // nearest bounded integer, halves away from zero
  int project(double x) const {
    const double r = std::round(x);
    if (r < alpha) return alpha;
    if (r > beta) return beta;
    return static_cast<int>(r);
  }

  bool contains(int x) const { return x >= alpha && x <= beta; }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

// integer factors of one matrix: u is m x r, v is n x r, entries within bounds
struct IntFactorPair {
  IntMatrix u;
  IntMatrix v;
  Bounds bounds;

  Index rank() const { return u.cols(); }

  bool within_bounds() const {
    return u.minCoeff() >= bounds.alpha && u.maxCoeff() <= bounds.beta &&
           v.minCoeff() >= bounds.alpha && v.maxCoeff() <= bounds.beta;
  }
};

// encoder settings; exactly one of quality or rank drives rank selection
struct QmfConfig {
  std::optional<double> quality = 0.1;
  std::optional<int> rank;
  Bounds bounds{};
  int iterations = 10;
  int patch = 8;

  void validate() const {
    if (quality.has_value() == rank.has_value())
      throw std::invalid_argument("config: set exactly one of quality and rank");
    if (quality && (!(*quality >= 0.0) || !(*quality <= 1.0)))
      throw std::invalid_argument("config: quality outside [0, 1]");
    if (rank && *rank < 1) throw std::invalid_argument("config: rank below 1");
    if (iterations < 0) throw std::invalid_argument("config: negative iterations");
    if (patch < 1 || patch > 255)
      throw std::invalid_argument("config: patch outside [1, 255]");
  }
};

}  // namespace qmf
