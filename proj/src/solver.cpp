#include "qmf/solver.hpp"

#include <cmath>

namespace qmf {
namespace {

void check_problem(const Matrix& x, Index r) {
  if (x.rows() < 1 || x.cols() < 1)
    throw std::invalid_argument("bcd: empty matrix");
  if (!x.allFinite()) throw std::invalid_argument("bcd: non-finite entries");
  if (r < 1 || r > std::min(x.rows(), x.cols()))
    throw std::invalid_argument("bcd: rank outside [1, min(m, n)]");
}

}  // namespace

Index rank_from_quality(double quality, Index m, Index n) {
  if (!(quality >= 0.0 && quality <= 1.0))
    throw std::invalid_argument("rank_from_quality: quality outside [0, 1]");
  if (m < 1 || n < 1)
    throw std::invalid_argument("rank_from_quality: empty matrix");
  const auto r = std::llround(quality * static_cast<double>(std::min(m, n)));
  return std::max<Index>(static_cast<Index>(r), 1);
}

double objective(const Matrix& x, const IntFactorPair& factors) {
  if (factors.u.rows() != x.rows() || factors.v.rows() != x.cols() ||
      factors.u.cols() != factors.v.cols())
    throw std::invalid_argument("objective: factor shapes do not match");
  return objective(x, factors.u.cast<double>(), factors.v.cast<double>());
}

IntFactorPair init_factors(const Matrix& x, Index r, const Bounds& bounds) {
  check_problem(x, r);
  const SvdTriplet svd = truncated_svd(x, r);
  IntFactorPair out;
  out.bounds = bounds;
  out.u.resize(x.rows(), r);
  out.v.resize(x.cols(), r);
  for (Index j = 0; j < r; ++j) {
    const double s = std::sqrt(svd.sigma(j));
    for (Index i = 0; i < x.rows(); ++i)
      out.u(i, j) = bounds.project(s * svd.u(i, j));
    for (Index i = 0; i < x.cols(); ++i)
      out.v(i, j) = bounds.project(s * svd.v(i, j));
  }
  return out;
}

IntVector update_column(const Matrix& residual, const IntVector& other,
                        const Bounds& bounds) {
  if (residual.cols() != other.size())
    throw std::invalid_argument("update_column: shapes do not match");
  const double norm2 = other.cast<double>().squaredNorm();
  if (norm2 == 0.0)
    throw std::invalid_argument("update_column: degenerate all-zero column");
  const Vector target = residual * other.cast<double>() / norm2;
  IntVector out(residual.rows());
  for (Index i = 0; i < out.size(); ++i) out(i) = bounds.project(target(i));
  return out;
}

IntFactorPair bcd_solve(const Matrix& x, Index r, const Bounds& bounds,
                        int sweeps, const BcdTrace* trace) {
  check_problem(x, r);
  if (sweeps < 0) throw std::invalid_argument("bcd: negative sweep count");

  const IntFactorPair start = init_factors(x, r, bounds);
  Matrix u = start.u.cast<double>();
  Matrix v = start.v.cast<double>();

  // one factor column against the rest: the cached products give the residual
  // term a.col(j) - sum_{s != j} b(s, j) * u.col(s); keeping u current in
  // place folds already-updated columns into the sum automatically
  const auto pass = [&](const Matrix& data, Matrix& mine, const Matrix& partner) {
    bool changed = false;
    const Matrix a = data * partner;
    const Matrix b = partner.transpose() * partner;
    for (Index j = 0; j < r; ++j) {
      const double norm2 = b(j, j);
      if (norm2 > 0.0) {
        const Vector numer = a.col(j) - mine * b.col(j) + norm2 * mine.col(j);
        for (Index i = 0; i < mine.rows(); ++i) {
          const double q = bounds.project(numer(i) / norm2);
          if (q != mine(i, j)) {
            mine(i, j) = q;
            changed = true;
          }
        }
      }
      if (trace && trace->on_column_update) trace->on_column_update(u, v);
    }
    return changed;
  };

  int run = 0;
  for (int k = 0; k < sweeps; ++k) {
    const bool u_changed = pass(x, u, v);
    const bool v_changed = pass(x.transpose(), v, u);
    ++run;
    if (!u_changed && !v_changed) break;
  }
  if (trace && trace->sweeps_run) *trace->sweeps_run = run;

  IntFactorPair out;
  out.u = u.cast<int>();
  out.v = v.cast<int>();
  out.bounds = bounds;
  return out;
}

}  // namespace qmf
