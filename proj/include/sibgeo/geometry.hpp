#pragma once

// Chart-based metric geometry for metrics of either signature.
//
// Curvature convention: Rm(a,b,c,d) = g(R(a,b)c, d) with
// R(a,b)c = nabla_a nabla_b c - nabla_b nabla_a c - nabla_[a,b] c, so in
// coordinates Rm_ijkl = g_lm R^m_ijk and
//   R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
// Ric(Y,Z) = sum g^ab Rm(d_a, Y, Z, d_b); the round unit sphere has
// sectional curvature +1.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sibgeo/expr.hpp"
#include "sibgeo/tensor.hpp"

namespace sibgeo {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

class Chart {
 public:
  Chart() = default;
  // `box` holds finite sampling bounds; `domain` the open coordinate domain
  // (defaults to all of R^n). Throws BadParameters on invalid input.
  Chart(std::vector<std::string> names, std::vector<Interval> box,
        std::vector<Interval> domain = {});

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& box() const { return box_; }
  const std::vector<Interval>& domain() const { return domain_; }
  int index_of(std::string_view name) const;  // -1 when absent
  bool in_box(std::span<const double> p) const;
  bool in_domain(std::span<const double> p) const;

  Expr parse(std::string_view source) const { return sibgeo::parse(source, names_); }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> box_;
  std::vector<Interval> domain_;
};

enum class Signature { Riemannian, Lorentzian };

std::string_view to_string(Signature s);

class MetricField {
 public:
  MetricField() = default;
  // Components given as a full n x n matrix; entries (i,j) and (j,i) must be
  // structurally identical expressions, else NotSymmetric names the first pair.
  MetricField(Chart chart, const std::vector<std::vector<Expr>>& components, Signature signature);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  Signature signature() const { return signature_; }
  const Expr& component(int i, int j) const;

  SymBilinear eval(std::span<const double> p) const;

 private:
  Chart chart_;
  std::vector<Expr> upper_;  // packed upper triangle
  Signature signature_ = Signature::Riemannian;
};

class VectorFieldSpec {
 public:
  VectorFieldSpec() = default;
  VectorFieldSpec(Chart chart, std::vector<Expr> components);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  const Expr& component(int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<Expr>& components() const { return components_; }

  Vec eval(std::span<const double> p) const;
  std::vector<Jet2> eval_jet(std::span<const double> p) const;

 private:
  Chart chart_;
  std::vector<Expr> components_;
};

// Christoffel symbols of the second kind, G^k_ij, symmetric in (i,j).
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : n_(n), a_(static_cast<std::size_t>(n * n * n), 0.0) {}
  int dim() const { return n_; }
  double operator()(int k, int i, int j) const { return a_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }
  double& operator()(int k, int i, int j) { return a_[static_cast<std::size_t>((k * n_ + i) * n_ + j)]; }
  double max_abs() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Metric values with first and second coordinate derivatives at a point.
struct MetricJets {
  int n = 0;
  SymBilinear g;
  std::vector<double> dg;   // dg[(k*n + i)*n + j] = d_k g_ij
  std::vector<double> ddg;  // ddg[((k*n + l)*n + i)*n + j] = d_k d_l g_ij

  double d(int k, int i, int j) const { return dg[static_cast<std::size_t>((k * n + i) * n + j)]; }
  double dd(int k, int l, int i, int j) const {
    return ddg[static_cast<std::size_t>(((k * n + l) * n + i) * n + j)];
  }
};

MetricJets metric_jets(const MetricField& m, std::span<const double> p);

struct PointGeometry {
  Vec point;
  SymBilinear g;
  SymBilinear g_inv;
  Christoffel christoffel;
  Curvature4 riemann;
  SymBilinear ricci;
  double scalar = 0.0;
};

// Throws SingularMetric when |det g| <= 1e-10, DomainError from evaluation.
Christoffel christoffel(const MetricField& m, std::span<const double> p);
PointGeometry riemann_at(const MetricField& m, std::span<const double> p);

// Checks invertibility and the declared signature at p via Jacobi
// eigenvalues. Throws SingularMetric or SignatureError.
void validate_metric_at(const MetricField& m, std::span<const double> p);

// Rm(u,v,v,u) / (g(u,u) g(v,v) - g(u,v)^2). Throws DegeneratePlane.
double sectional(const PointGeometry& pg, std::span<const double> u, std::span<const double> v);

// Hess f (i,j) = d_i d_j f - G^k_ij d_k f.
SymBilinear hessian(const MetricField& m, const Expr& f, std::span<const double> p);

// Covariant derivative (nabla_X Y)^k = X^i d_i Y^k + G^k_ij X^i Y^j, where the
// components of Y carry first derivatives.
template <class Jets>
Vec covariant_derivative(const Christoffel& gamma, std::span<const double> x, const Jets& y) {
  const int n = gamma.dim();
  Vec out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double xi = x[static_cast<std::size_t>(i)];
      acc += xi * y[static_cast<std::size_t>(k)].grad(i);
      for (int j = 0; j < n; ++j) acc += gamma(k, i, j) * xi * y[static_cast<std::size_t>(j)].value();
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

struct GeodesicState {
  double s = 0.0;
  Vec x;
  Vec v;
  double speed = 0.0;  // g(v, v)
};

struct Trajectory {
  std::vector<GeodesicState> states;
  bool stopped_early = false;
  std::string stop_reason;
};

// Fixed-step classical RK4 on x'' = -G(x)(x', x'). Stops early (flagged) when
// the path leaves the chart's sampling box or the metric becomes singular.
Trajectory integrate_geodesic(const MetricField& m, std::span<const double> p0,
                              std::span<const double> v0, double step, int n_steps);

}  // namespace sibgeo
