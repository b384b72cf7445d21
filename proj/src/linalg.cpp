#include "qmf/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace qmf {
namespace {

// fills column j of q with a unit vector orthogonal to every other column,
// chosen deterministically by scanning the canonical basis; pending columns
// are zero and do not perturb the projection
void complete_column(Matrix& q, Index j) {
  const Index dim = q.rows();
  for (Index k = 0; k < dim; ++k) {
    Vector w = Vector::Unit(dim, k);
    for (Index c = 0; c < q.cols(); ++c) {
      if (c == j) continue;
      w -= q.col(c).dot(w) * q.col(c);
    }
    const double norm = w.norm();
    if (norm > 1e-6) {
      q.col(j) = w / norm;
      return;
    }
  }
  throw std::runtime_error("truncated_svd: orthonormal completion failed");
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions differ");
  return a * b;
}

SvdTriplet truncated_svd(const Matrix& x, Index r) {
  const Index m = x.rows();
  const Index n = x.cols();
  if (m < 1 || n < 1) throw std::invalid_argument("truncated_svd: empty matrix");
  if (r < 1 || r > std::min(m, n))
    throw std::invalid_argument("truncated_svd: rank outside [1, min(m, n)]");
  if (!x.allFinite())
    throw std::invalid_argument("truncated_svd: non-finite entries");

  // eigendecompose the Gram matrix of the smaller side; for patchified planes
  // that side is at most patch^2, so a full dense solve is cheap and exact
  const bool gram_on_right = m >= n;
  const Matrix gram =
      gram_on_right ? Matrix(x.transpose() * x) : Matrix(x * x.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("truncated_svd: eigensolver failed");

  // eigenvalues come back ascending; keep the top r, largest first
  const Index g = gram.rows();
  Vector sigma(r);
  Matrix side(g, r);
  for (Index j = 0; j < r; ++j) {
    sigma(j) = std::sqrt(std::max(eig.eigenvalues()(g - 1 - j), 0.0));
    side.col(j) = eig.eigenvectors().col(g - 1 - j);
  }

  // derive the other side column by column; re-orthonormalize so the triplet
  // stays usable when trailing singular values vanish
  const Index other_dim = gram_on_right ? m : n;
  Matrix other(other_dim, r);
  std::vector<char> pending(static_cast<std::size_t>(r), 0);
  const double tiny = 1e-12 * std::max(sigma(0), 1.0);
  for (Index j = 0; j < r; ++j) {
    bool ok = false;
    if (sigma(j) > tiny) {
      Vector w = gram_on_right ? Vector(x * side.col(j))
                               : Vector(x.transpose() * side.col(j));
      w /= sigma(j);
      for (Index c = 0; c < j; ++c) w -= other.col(c).dot(w) * other.col(c);
      const double norm = w.norm();
      if (norm > 0.5) {
        other.col(j) = w / norm;
        ok = true;
      }
    }
    if (!ok) {
      pending[static_cast<std::size_t>(j)] = 1;
      other.col(j).setZero();
    }
  }
  for (Index j = 0; j < r; ++j)
    if (pending[static_cast<std::size_t>(j)]) complete_column(other, j);

  SvdTriplet out;
  out.sigma = std::move(sigma);
  if (gram_on_right) {
    out.u = std::move(other);
    out.v = std::move(side);
  } else {
    out.u = std::move(side);
    out.v = std::move(other);
  }

  // sign convention: first entry of each right-singular vector whose magnitude
  // clears the noise floor is made positive
  for (Index j = 0; j < r; ++j) {
    double lead = 0.0;
    for (Index i = 0; i < n && lead == 0.0; ++i)
      if (std::abs(out.v(i, j)) > 1e-12) lead = out.v(i, j);
    if (lead < 0.0) {
      out.u.col(j) = -out.u.col(j);
      out.v.col(j) = -out.v.col(j);
    }
  }
  return out;
}

}  // namespace qmf
