#pragma once

#include "qmf/image.hpp"
#include "qmf/types.hpp"

#include <random>
#include <vector>

// reference implementations kept deliberately naive and scalar so library
// results can be checked against an independent route
namespace qmf::testing {

// triple-loop product
Matrix naive_matmul(const Matrix& a, const Matrix& b);

// eigenvalues of a symmetric matrix by cyclic jacobi rotations, descending;
// scalar loops only, no library eigensolver
std::vector<double> jacobi_eigenvalues(const Matrix& sym);

// squared frobenius error of a rank-1 fit, |e - u v^T|_F^2, by explicit loops
double column_objective(const Matrix& e, const IntVector& u, const IntVector& v);

// minimum of column_objective over every bounded integer vector u; feasible
// only for tiny sizes (enumerates (beta - alpha + 1)^rows candidates)
double exhaustive_column_minimum(const Matrix& e, const IntVector& v,
                                 const Bounds& bounds);

// plane extended to (ph, pw) with the mirror-without-edge rule and edge
// replication once the mirror range runs out, built explicitly
Matrix reflect_pad(const Matrix& plane, Index ph, Index pw);

// 2x2 mean pooling over an explicitly padded plane
Matrix pool_reference(const Matrix& plane);

// patchify over an explicitly padded plane
Matrix patchify_reference(const Matrix& plane, int patch);

// windowed ssim evaluated per window with explicit loops
double ssim_reference(const RgbImage& a, const RgbImage& b);

// uniform random fill helpers shared by the test files
Matrix random_matrix(std::mt19937& rng, Index rows, Index cols, double lo,
                     double hi);
IntMatrix random_int_matrix(std::mt19937& rng, Index rows, Index cols, int lo,
                            int hi);

}  // namespace qmf::testing
