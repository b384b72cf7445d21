#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace qmf::testing {

Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j)
      for (Index k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

std::vector<double> jacobi_eigenvalues(const Matrix& sym) {
  const Index n = sym.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a[i][j] = sym(i, j);

  double scale = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30 * scale * scale) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double t =
            sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> values(n);
  for (Index i = 0; i < n; ++i) values[i] = a[i][i];
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

double column_objective(const Matrix& e, const IntVector& u,
                        const IntVector& v) {
  double acc = 0.0;
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) {
      const double d = e(i, j) - static_cast<double>(u(i)) * v(j);
      acc += d * d;
    }
  }
  return acc;
}

double exhaustive_column_minimum(const Matrix& e, const IntVector& v,
                                 const Bounds& bounds) {
  const Index m = e.rows();
  IntVector u = IntVector::Constant(m, bounds.alpha);
  double best = column_objective(e, u, v);
  while (true) {
    Index pos = 0;
    while (pos < m && u(pos) == bounds.beta) u(pos++) = bounds.alpha;
    if (pos == m) break;
    ++u(pos);
    best = std::min(best, column_objective(e, u, v));
  }
  return best;
}

Matrix reflect_pad(const Matrix& plane, Index ph, Index pw) {
  const Index h = plane.rows();
  const Index w = plane.cols();
  const auto wrap = [](Index q, Index n) {
    if (q < n) return q;
    const Index mirrored = 2 * (n - 1) - q;
    return mirrored >= 0 ? mirrored : n - 1;
  };
  Matrix out(ph, pw);
  for (Index i = 0; i < ph; ++i)
    for (Index j = 0; j < pw; ++j) out(i, j) = plane(wrap(i, h), wrap(j, w));
  return out;
}

Matrix pool_reference(const Matrix& plane) {
  const Index oh = (plane.rows() + 1) / 2;
  const Index ow = (plane.cols() + 1) / 2;
  const Matrix padded = reflect_pad(plane, 2 * oh, 2 * ow);
  Matrix out(oh, ow);
  for (Index i = 0; i < oh; ++i)
    for (Index j = 0; j < ow; ++j)
      out(i, j) = (padded(2 * i, 2 * j) + padded(2 * i, 2 * j + 1) +
                   padded(2 * i + 1, 2 * j) + padded(2 * i + 1, 2 * j + 1)) /
                  4.0;
  return out;
}

Matrix patchify_reference(const Matrix& plane, int patch) {
  const Index ph = (plane.rows() + patch - 1) / patch * patch;
  const Index pw = (plane.cols() + patch - 1) / patch * patch;
  const Matrix padded = reflect_pad(plane, ph, pw);
  const Index rows = ph / patch;
  const Index cols = pw / patch;
  Matrix out(rows * cols, static_cast<Index>(patch) * patch);
  for (Index pr = 0; pr < rows; ++pr)
    for (Index pc = 0; pc < cols; ++pc)
      for (Index a = 0; a < patch; ++a)
        for (Index b = 0; b < patch; ++b)
          out(pr * cols + pc, a * patch + b) =
              padded(pr * patch + a, pc * patch + b);
  return out;
}

double ssim_reference(const RgbImage& a, const RgbImage& b) {
  const int window = 11;
  const double c1 = 6.5025;
  const double c2 = 58.5225;
  const int h = a.height;
  const int w = a.width;

  std::vector<std::vector<double>> la(h, std::vector<double>(w));
  std::vector<std::vector<double>> lb(h, std::vector<double>(w));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      la[i][j] = 0.299 * a.at(i, j, 0) + 0.587 * a.at(i, j, 1) +
                 0.114 * a.at(i, j, 2);
      lb[i][j] = 0.299 * b.at(i, j, 0) + 0.587 * b.at(i, j, 1) +
                 0.114 * b.at(i, j, 2);
    }
  }

  double g1[window];
  double norm = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - (window - 1) / 2.0;
    g1[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
    norm += g1[i];
  }
  for (int i = 0; i < window; ++i) g1[i] /= norm;

  double acc = 0.0;
  long count = 0;
  for (int i = 0; i + window <= h; ++i) {
    for (int j = 0; j + window <= w; ++j) {
      double mu_a = 0.0, mu_b = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
      for (int di = 0; di < window; ++di) {
        for (int dj = 0; dj < window; ++dj) {
          const double wgt = g1[di] * g1[dj];
          const double pa = la[i + di][j + dj];
          const double pb = lb[i + di][j + dj];
          mu_a += wgt * pa;
          mu_b += wgt * pb;
          aa += wgt * pa * pa;
          bb += wgt * pb * pb;
          ab += wgt * pa * pb;
        }
      }
      const double var_a = aa - mu_a * mu_a;
      const double var_b = bb - mu_b * mu_b;
      const double cov = ab - mu_a * mu_b;
      const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
      const double den =
          (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
      acc += num / den;
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

Matrix random_matrix(std::mt19937& rng, Index rows, Index cols, double lo,
                     double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = uni(rng);
  return out;
}

IntMatrix random_int_matrix(std::mt19937& rng, Index rows, Index cols, int lo,
                            int hi) {
  std::uniform_int_distribution<int> uni(lo, hi);
  IntMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = uni(rng);
  return out;
}

}  // namespace qmf::testing
