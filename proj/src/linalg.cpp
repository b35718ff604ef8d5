#include "sibgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace sibgeo {

namespace {

// In-place LU with partial pivoting; returns the sign of the permutation, or
// 0 if a zero pivot was met.
int lu_decompose(Matrix& a, std::vector<int>& perm) {
  const int n = a.dim();
  perm.resize(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(p)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= a(i, k) * a(k, j);
    }
  }
  return sign;
}

}  // namespace

double determinant(const Matrix& m) {
  Matrix a = m;
  std::vector<int> perm;
  const int sign = lu_decompose(a, perm);
  if (sign == 0) return 0.0;
  double det = sign;
  for (int i = 0; i < a.dim(); ++i) det *= a(i, i);
  return det;
}

SymBilinear inverse(const SymBilinear& g, double det_floor) {
  const int n = g.dim();
  Matrix a = g.to_matrix();
  std::vector<int> perm;
  const int sign = lu_decompose(a, perm);
  double det = sign;
  for (int i = 0; i < n; ++i) det *= a(i, i);
  if (sign == 0 || !(std::abs(det) > det_floor))
    throw SingularMetric("metric determinant " + std::to_string(det) + " is below the floor");

  Matrix inv(n);
  for (int col = 0; col < n; ++col) {
    Vec x(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)] == col ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) x[static_cast<std::size_t>(i)] -= a(i, j) * x[static_cast<std::size_t>(j)];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[static_cast<std::size_t>(i)] -= a(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] /= a(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, col) = x[static_cast<std::size_t>(i)];
  }
  return SymBilinear::symmetric_part(inv);
}

EigenSystem jacobi_eigen(const SymBilinear& sym, double off_tol, int max_sweeps) {
  const int n = sym.dim();
  Matrix a = sym.to_matrix();
  Matrix v = Matrix::identity(n);
  const double threshold = off_tol * (1.0 + sym.max_abs());

  EigenSystem out;
  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < threshold) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = Matrix(n);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a(src, src);
    int big = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
    const double sgn = v(big, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = sgn * v(i, src);
  }
  return out;
}

}  // namespace sibgeo
