#pragma once

// Dense multilinear algebra at a single point.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sibgeo/errors.hpp"

namespace sibgeo {

using Vec = std::vector<double>;

// Square matrix, row-major. Used where symmetry is not guaranteed.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0.0) {}
  static Matrix identity(int n);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Matrix transpose() const;
  Vec operator*(std::span<const double> v) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  // max |a_ij - a_ji|
  double asymmetry() const;
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Symmetric bilinear form; only the upper triangle is stored, so symmetry is
// exact by construction.
class SymBilinear {
 public:
  SymBilinear() = default;
  explicit SymBilinear(int n) : n_(n), a_(static_cast<std::size_t>(n * (n + 1) / 2), 0.0) {}
  static SymBilinear identity(int n);
  static SymBilinear diagonal(std::span<const double> d);
  // w (x) w for a covector w.
  static SymBilinear outer(std::span<const double> w);
  // (m + m^T) / 2
  static SymBilinear symmetric_part(const Matrix& m);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }
  double& operator()(int i, int j) { return a_[index(i, j)]; }

  double apply(std::span<const double> x, std::span<const double> y) const;
  Vec lower(std::span<const double> v) const;  // i -> sum_j a_ij v^j
  Matrix to_matrix() const;
  double max_abs() const;

  friend SymBilinear operator+(const SymBilinear& a, const SymBilinear& b);
  friend SymBilinear operator-(const SymBilinear& a, const SymBilinear& b);
  friend SymBilinear operator*(double s, const SymBilinear& a);

 private:
  std::size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * n_ - i * (i - 1) / 2 + (j - i));
  }

  int n_ = 0;
  std::vector<double> a_;
};

// Covariant 4-tensor, dense n^4 storage.
class Curvature4 {
 public:
  Curvature4() = default;
  explicit Curvature4(int n) : n_(n), a_(static_cast<std::size_t>(n * n * n * n), 0.0) {}

  int dim() const { return n_; }
  double operator()(int a, int b, int c, int d) const { return a_[index(a, b, c, d)]; }
  double& operator()(int a, int b, int c, int d) { return a_[index(a, b, c, d)]; }

  // R(x, y, z, w) for vectors given by components.
  double apply(std::span<const double> x, std::span<const double> y, std::span<const double> z,
               std::span<const double> w) const;
  double max_abs() const;
  std::span<const double> data() const { return a_; }

  friend Curvature4 operator+(const Curvature4& a, const Curvature4& b);
  friend Curvature4 operator-(const Curvature4& a, const Curvature4& b);
  friend Curvature4 operator*(double s, const Curvature4& a);

 private:
  std::size_t index(int a, int b, int c, int d) const {
    return static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d);
  }

  int n_ = 0;
  std::vector<double> a_;
};

// (A o B)(x,y,z,w) = A(x,w)B(y,z) + A(y,z)B(x,w) - A(x,z)B(y,w) - A(y,w)B(x,z).
// With this sign, (1/2) g o g has sectional curvature +1 under the curvature
// convention Rm(a,b,c,d) = g(R(a,b)c, d).
Curvature4 kn_product(const SymBilinear& a, const SymBilinear& b);

// Contracts slots (first, second) of R with g_inv; the remaining two slots keep
// their order. The result is symmetrized. Slots are 0-based.
SymBilinear trace_with_metric(const Curvature4& r, const SymBilinear& g_inv, int first = 0,
                              int second = 3);

struct SymmetryResiduals {
  double antisymmetry = 0.0;  // max over (a,b) and (c,d) swaps
  double pair_symmetry = 0.0;
  double bianchi = 0.0;
  double scale = 1.0;  // 1 + max |R|
  bool passes(double tol) const {
    const double bound = tol * scale;
    return antisymmetry < bound && pair_symmetry < bound && bianchi < bound;
  }
};

SymmetryResiduals check_riemann_symmetries(const Curvature4& r);

// max |a - b| componentwise.
double max_abs_diff(const Curvature4& a, const Curvature4& b);
double max_abs_diff(const SymBilinear& a, const SymBilinear& b);

}  // namespace sibgeo
