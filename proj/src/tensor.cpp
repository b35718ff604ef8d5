#include "sibgeo/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace sibgeo {

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::operator*(std::span<const double> v) const {
  Vec r(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix product");
  const int n = a.dim();
  Matrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

double Matrix::asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

SymBilinear SymBilinear::identity(int n) {
  SymBilinear s(n);
  for (int i = 0; i < n; ++i) s(i, i) = 1.0;
  return s;
}

SymBilinear SymBilinear::diagonal(std::span<const double> d) {
  SymBilinear s(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) s(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return s;
}

SymBilinear SymBilinear::outer(std::span<const double> w) {
  const int n = static_cast<int>(w.size());
  SymBilinear s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s(i, j) = w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
  return s;
}

SymBilinear SymBilinear::symmetric_part(const Matrix& m) {
  const int n = m.dim();
  SymBilinear s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

double SymBilinear::apply(std::span<const double> x, std::span<const double> y) const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      r += (*this)(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return r;
}

Vec SymBilinear::lower(std::span<const double> v) const {
  Vec r(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

Matrix SymBilinear::to_matrix() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymBilinear::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

SymBilinear operator+(const SymBilinear& a, const SymBilinear& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("SymBilinear sum");
  SymBilinear r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

SymBilinear operator-(const SymBilinear& a, const SymBilinear& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("SymBilinear difference");
  SymBilinear r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

SymBilinear operator*(double s, const SymBilinear& a) {
  SymBilinear r = a;
  for (double& x : r.a_) x *= s;
  return r;
}

double Curvature4::apply(std::span<const double> x, std::span<const double> y,
                         std::span<const double> z, std::span<const double> w) const {
  double r = 0.0;
  for (int a = 0; a < n_; ++a) {
    const double xa = x[static_cast<std::size_t>(a)];
    if (xa == 0.0) continue;
    for (int b = 0; b < n_; ++b) {
      const double yb = y[static_cast<std::size_t>(b)];
      if (yb == 0.0) continue;
      for (int c = 0; c < n_; ++c) {
        const double zc = z[static_cast<std::size_t>(c)];
        if (zc == 0.0) continue;
        for (int d = 0; d < n_; ++d) r += (*this)(a, b, c, d) * xa * yb * zc * w[static_cast<std::size_t>(d)];
      }
    }
  }
  return r;
}

double Curvature4::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

Curvature4 operator+(const Curvature4& a, const Curvature4& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("Curvature4 sum");
  Curvature4 r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

Curvature4 operator-(const Curvature4& a, const Curvature4& b) {
  if (a.n_ != b.n_) throw DimensionMismatch("Curvature4 difference");
  Curvature4 r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

Curvature4 operator*(double s, const Curvature4& a) {
  Curvature4 r = a;
  for (double& x : r.a_) x *= s;
  return r;
}

Curvature4 kn_product(const SymBilinear& a, const SymBilinear& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("kn_product: operands differ in dimension");
  const int n = a.dim();
  Curvature4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          r(x, y, z, w) = a(x, w) * b(y, z) + a(y, z) * b(x, w) - a(x, z) * b(y, w) - a(y, w) * b(x, z);
  return r;
}

SymBilinear trace_with_metric(const Curvature4& r, const SymBilinear& g_inv, int first, int second) {
  if (r.dim() != g_inv.dim()) throw DimensionMismatch("trace_with_metric");
  if (first < 0 || second < 0 || first > 3 || second > 3 || first == second)
    throw DimensionMismatch("trace_with_metric: slots must be two distinct values in [0,3]");
  const int n = r.dim();
  int free_slots[2];
  int k = 0;
  for (int s = 0; s < 4; ++s)
    if (s != first && s != second) free_slots[k++] = s;

  Matrix m(n);
  int idx[4];
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double gab = g_inv(a, b);
          if (gab == 0.0) continue;
          idx[first] = a;
          idx[second] = b;
          idx[free_slots[0]] = y;
          idx[free_slots[1]] = z;
          acc += gab * r(idx[0], idx[1], idx[2], idx[3]);
        }
      m(y, z) = acc;
    }
  return SymBilinear::symmetric_part(m);
}

SymmetryResiduals check_riemann_symmetries(const Curvature4& r) {
  SymmetryResiduals out;
  const int n = r.dim();
  out.scale = 1.0 + r.max_abs();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double v = r(a, b, c, d);
          out.antisymmetry = std::max({out.antisymmetry, std::abs(v + r(b, a, c, d)),
                                       std::abs(v + r(a, b, d, c))});
          out.pair_symmetry = std::max(out.pair_symmetry, std::abs(v - r(c, d, a, b)));
          out.bianchi = std::max(out.bianchi, std::abs(v + r(b, c, a, d) + r(c, a, b, d)));
        }
  return out;
}

double max_abs_diff(const Curvature4& a, const Curvature4& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff");
  double m = 0.0;
  const auto da = a.data(), db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
  return m;
}

double max_abs_diff(const SymBilinear& a, const SymBilinear& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace sibgeo
