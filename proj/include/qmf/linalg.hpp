#pragma once

#include "qmf/types.hpp"

namespace qmf {

// rank-r singular triplet; u and v have orthonormal columns, sigma is
// nonincreasing and nonnegative
struct SvdTriplet {
  Matrix u;
  Vector sigma;
  Matrix v;
};

// dimension-checked dense product
Matrix matmul(const Matrix& a, const Matrix& b);

// leading r singular triplets of x, computed from an eigendecomposition of the
// Gram matrix on the smaller side. Deterministic: each right-singular vector is
// signed so its first nonvanishing entry is positive, and exactly repeatable
// for identical input.
SvdTriplet truncated_svd(const Matrix& x, Index r);

}  // namespace qmf
