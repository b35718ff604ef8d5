#pragma once

// Truncated Taylor jets over n <= kMaxDim variables.
//
// Jet2 carries value, gradient and Hessian (upper triangle, row-major packed);
// Jet1 carries value and gradient only. Storage is fixed-size so arithmetic
// never allocates.

#include <array>
#include <cmath>
#include <cstddef>

#include "sibgeo/errors.hpp"

namespace sibgeo {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxPacked = kMaxDim * (kMaxDim + 1) / 2;

// Index of (i, j) in the packed upper triangle of an n x n symmetric matrix.
constexpr int packed_index(int n, int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * n - i * (i - 1) / 2 + (j - i);
}

class Jet2 {
 public:
  Jet2() = default;
  Jet2(int dim, double value) : dim_(dim), value_(value) {}

  static Jet2 constant(int dim, double value) { return Jet2(dim, value); }
  static Jet2 variable(int dim, int index, double value) {
    Jet2 j(dim, value);
    j.grad_[index] = 1.0;
    return j;
  }

  int dim() const { return dim_; }
  double value() const { return value_; }
  double grad(int i) const { return grad_[i]; }
  double hess(int i, int j) const { return hess_[packed_index(dim_, i, j)]; }

  double& value_ref() { return value_; }
  double& grad_ref(int i) { return grad_[i]; }
  double& hess_ref(int i, int j) { return hess_[packed_index(dim_, i, j)]; }

  // Chain rule for a scalar function phi applied to this jet, given
  // phi(u), phi'(u), phi''(u) at u = value().
  Jet2 compose(double f0, double f1, double f2) const {
    Jet2 r(dim_, f0);
    for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) {
        const int k = packed_index(dim_, i, j);
        r.hess_[k] = f1 * hess_[k] + f2 * grad_[i] * grad_[j];
      }
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r(a.dim_, a.value_ + b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
    for (int k = 0; k < a.packed(); ++k) r.hess_[k] = a.hess_[k] + b.hess_[k];
    return r;
  }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r(a.dim_, a.value_ - b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
    for (int k = 0; k < a.packed(); ++k) r.hess_[k] = a.hess_[k] - b.hess_[k];
    return r;
  }
  friend Jet2 operator-(const Jet2& a) {
    Jet2 r(a.dim_, -a.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = -a.grad_[i];
    for (int k = 0; k < a.packed(); ++k) r.hess_[k] = -a.hess_[k];
    return r;
  }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r(a.dim_, a.value_ * b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
    for (int i = 0; i < a.dim_; ++i)
      for (int j = i; j < a.dim_; ++j) {
        const int k = packed_index(a.dim_, i, j);
        r.hess_[k] = a.value_ * b.hess_[k] + b.value_ * a.hess_[k] + a.grad_[i] * b.grad_[j] +
                     a.grad_[j] * b.grad_[i];
      }
    return r;
  }
  friend Jet2 operator*(double s, const Jet2& a) {
    Jet2 r(a.dim_, s * a.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = s * a.grad_[i];
    for (int k = 0; k < a.packed(); ++k) r.hess_[k] = s * a.hess_[k];
    return r;
  }
  // Throws DomainError when b.value() == 0.
  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    const double v = b.value_;
    if (v == 0.0) throw DomainError("division by zero");
    // q = a / b  =>  a = q b, differentiated twice and solved for q's jet.
    Jet2 q(a.dim_, a.value_ / v);
    for (int i = 0; i < a.dim_; ++i) q.grad_[i] = (a.grad_[i] - q.value_ * b.grad_[i]) / v;
    for (int i = 0; i < a.dim_; ++i)
      for (int j = i; j < a.dim_; ++j) {
        const int k = packed_index(a.dim_, i, j);
        q.hess_[k] = (a.hess_[k] - q.grad_[i] * b.grad_[j] - q.grad_[j] * b.grad_[i] -
                      q.value_ * b.hess_[k]) /
                     v;
      }
    return q;
  }

 private:
  int packed() const { return dim_ * (dim_ + 1) / 2; }

  int dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
  std::array<double, kMaxPacked> hess_{};
};

class Jet1 {
 public:
  Jet1() = default;
  Jet1(int dim, double value) : dim_(dim), value_(value) {}
  explicit Jet1(const Jet2& j) : dim_(j.dim()), value_(j.value()) {
    for (int i = 0; i < dim_; ++i) grad_[i] = j.grad(i);
  }

  int dim() const { return dim_; }
  double value() const { return value_; }
  double grad(int i) const { return grad_[i]; }
  double& grad_ref(int i) { return grad_[i]; }

  friend Jet1 operator+(const Jet1& a, const Jet1& b) {
    Jet1 r(a.dim_, a.value_ + b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
    return r;
  }
  friend Jet1 operator-(const Jet1& a, const Jet1& b) {
    Jet1 r(a.dim_, a.value_ - b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
    return r;
  }
  friend Jet1 operator-(const Jet1& a) {
    Jet1 r(a.dim_, -a.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = -a.grad_[i];
    return r;
  }
  friend Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r(a.dim_, a.value_ * b.value_);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
    return r;
  }
  friend Jet1 operator/(const Jet1& a, const Jet1& b) {
    if (b.value_ == 0.0) throw DomainError("division by zero");
    const double q = a.value_ / b.value_;
    Jet1 r(a.dim_, q);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = (a.grad_[i] - q * b.grad_[i]) / b.value_;
    return r;
  }
  Jet1& operator+=(const Jet1& b) { return *this = *this + b; }
  Jet1& operator-=(const Jet1& b) { return *this = *this - b; }

  friend Jet1 sqrt(const Jet1& a) {
    if (!(a.value_ > 0.0)) throw DomainError("sqrt of nonpositive jet");
    const double s = std::sqrt(a.value_);
    Jet1 r(a.dim_, s);
    for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] / (2.0 * s);
    return r;
  }

 private:
  int dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
};

// Scalar adaptors so templated code runs on double, Jet1 alike.
inline double value_of(double x) { return x; }
inline double value_of(const Jet1& x) { return x.value(); }

}  // namespace sibgeo
