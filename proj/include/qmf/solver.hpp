#pragma once

#include "qmf/linalg.hpp"

#include <functional>

namespace qmf {

// rank for a quality knob in [0, 1]: round(quality * min(m, n)), at least 1
Index rank_from_quality(double quality, Index m, Index n);

// squared Frobenius reconstruction error of x against the integer factors
double objective(const Matrix& x, const IntFactorPair& factors);

// same objective for real-valued iterates
inline double objective(const Matrix& x, const Matrix& u, const Matrix& v) {
  return (x - u * v.transpose()).squaredNorm();
}

// rank-r starting point: truncated SVD with sqrt(sigma) split evenly across
// both factors, then rounded into bounds
IntFactorPair init_factors(const Matrix& x, Index r, const Bounds& bounds);

// exact bounded-integer minimizer of |residual - u * other^T|_F^2 over u for a
// fixed integer column `other`; throws on an all-zero `other`
IntVector update_column(const Matrix& residual, const IntVector& other,
                        const Bounds& bounds);

// observation hooks for the coordinate descent loop
struct BcdTrace {
  // invoked after every column update with the current iterates
  std::function<void(const Matrix& u, const Matrix& v)> on_column_update;
  // receives the number of sweeps actually executed
  int* sweeps_run = nullptr;
};

// block coordinate descent on the bounded integer factorization of x: runs up
// to `sweeps` full passes over the 2r factor columns, stopping early once a
// pass changes nothing. The objective never increases between column updates.
IntFactorPair bcd_solve(const Matrix& x, Index r, const Bounds& bounds,
                        int sweeps, const BcdTrace* trace = nullptr);

}  // namespace qmf
