#include "sibgeo/sibling.hpp"

#include <algorithm>
#include <cmath>

#include "sibgeo/linalg.hpp"
#include "sibgeo/sampling.hpp"

namespace sibgeo {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

constexpr double kUnitTolerance = 1e-8;
constexpr double kDependenceFloor = 1e-8;
constexpr double kSelfAdjointTolerance = 1e-6;
constexpr int kDefaultSamples = 32;

std::vector<Vec> default_samples(const Chart& chart, std::span<const Vec> samples) {
  if (!samples.empty()) return {samples.begin(), samples.end()};
  return halton_points(chart, kDefaultSamples);
}

// Metric, inverse, Christoffels and jets of T at one point.
struct FieldContext {
  MetricJets mj;
  SymBilinear g_inv;
  Christoffel gamma;
  std::vector<Jet2> T;
  Vec Tv;
};

FieldContext field_context(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p) {
  FieldContext c;
  c.mj = metric_jets(g, p);
  c.g_inv = inverse(c.mj.g);
  const int n = c.mj.n;
  c.gamma = Christoffel(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += c.g_inv(k, l) * (c.mj.d(i, j, l) + c.mj.d(j, i, l) - c.mj.d(l, i, j));
        c.gamma(k, i, j) = 0.5 * acc;
        c.gamma(k, j, i) = 0.5 * acc;
      }
  c.T = T.eval_jet(p);
  for (const auto& t : c.T) c.Tv.push_back(t.value());
  return c;
}

// The g-metric matrix as first-order jets.
std::vector<Jet1> metric_jet1(const MetricJets& mj) {
  const int n = mj.n;
  std::vector<Jet1> g(uz(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet1 e(n, mj.g(i, j));
      for (int k = 0; k < n; ++k) e.grad_ref(k) = mj.d(k, i, j);
      g[uz(i * n + j)] = e;
    }
  return g;
}

template <class S>
S lift(double v, int dim);
template <>
double lift<double>(double v, int) { return v; }
template <>
Jet1 lift<Jet1>(double v, int dim) { return Jet1(dim, v); }

template <class S>
S inner(const std::vector<S>& g, const std::vector<S>& a, const std::vector<S>& b, int n) {
  S acc = lift<S>(0.0, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc = acc + g[uz(i * n + j)] * a[uz(i)] * b[uz(j)];
  return acc;
}

template <class S>
S sqrt_of(const S& x) {
  using std::sqrt;
  return sqrt(x);
}

// Gram-Schmidt normal frame; works on values (double) or on first-order jets,
// in which case the output carries the frame fields' first derivatives. The
// dropped basis vector is chosen from values only, so both variants agree.
template <class S>
std::vector<std::vector<S>> normal_frame_impl(const std::vector<S>& g, const std::vector<S>& T, int n,
                                              const Matrix* basis) {
  auto basis_vector = [&](int i) {
    std::vector<S> b(uz(n));
    for (int k = 0; k < n; ++k) b[uz(k)] = lift<S>(basis ? (*basis)(k, i) : (k == i ? 1.0 : 0.0), n);
    return b;
  };

  const S tt = inner(g, T, T, n);
  int dropped = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double proj = std::abs(value_of(inner(g, basis_vector(i), T, n)));
    if (proj > best) {
      best = proj;
      dropped = i;
    }
  }

  std::vector<std::vector<S>> frame;
  for (int i = 0; i < n; ++i) {
    if (i == dropped) continue;
    std::vector<S> v = basis_vector(i);
    const S c = inner(g, v, T, n) / tt;
    for (int k = 0; k < n; ++k) v[uz(k)] = v[uz(k)] - c * T[uz(k)];
    for (const auto& u : frame) {
      const S d = inner(g, v, u, n);
      for (int k = 0; k < n; ++k) v[uz(k)] = v[uz(k)] - d * u[uz(k)];
    }
    const S nn = inner(g, v, v, n);
    if (!(value_of(nn) > kDependenceFloor * kDependenceFloor))
      throw DomainError("normal frame is degenerate at this point");
    const S norm = sqrt_of(nn);
    for (int k = 0; k < n; ++k) v[uz(k)] = v[uz(k)] / norm;
    frame.push_back(std::move(v));
  }
  return frame;
}

std::vector<Vec> frame_values(const FieldContext& c, const Matrix* basis) {
  const int n = c.mj.n;
  std::vector<double> g(uz(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[uz(i * n + j)] = c.mj.g(i, j);
  return normal_frame_impl<double>(g, c.Tv, n, basis);
}

std::vector<std::vector<Jet1>> frame_jets(const FieldContext& c, const Matrix* basis) {
  const int n = c.mj.n;
  std::vector<Jet1> T;
  for (const auto& t : c.T) T.emplace_back(t);
  return normal_frame_impl<Jet1>(metric_jet1(c.mj), T, n, basis);
}

Matrix nabla_flat_from(const FieldContext& c) {
  const int n = c.mj.n;
  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    Vec di(uz(n), 0.0);  // nabla_{d_i} T
    for (int k = 0; k < n; ++k) {
      double acc = c.T[uz(k)].grad(i);
      for (int l = 0; l < n; ++l) acc += c.gamma(k, i, l) * c.Tv[uz(l)];
      di[uz(k)] = acc;
    }
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += c.mj.g(j, k) * di[uz(k)];
      a(i, j) = acc;
    }
  }
  return a;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vec covariant_of_values(const Christoffel& gamma, std::span<const double> x, const std::vector<Jet1>& y) {
  return covariant_derivative(gamma, x, y);
}

}  // namespace

MetricField sibling_metric(const MetricField& m, const VectorFieldSpec& T, std::span<const Vec> samples) {
  const int n = m.dim();
  if (T.dim() != n) throw DimensionMismatch("vector field and metric live on different charts");
  const bool to_lorentzian = m.signature() == Signature::Riemannian;
  const double expected_norm = to_lorentzian ? 1.0 : -1.0;

  const std::vector<Vec> pts = default_samples(m.chart(), samples);
  double worst = -1.0;
  Vec worst_point;
  double worst_value = 0.0;
  for (const Vec& p : pts) {
    const SymBilinear g = m.eval(p);
    const Vec t = T.eval(p);
    const double norm = g.apply(t, t);
    const double dev = std::abs(norm - expected_norm);
    if (dev > worst) {
      worst = dev;
      worst_point = p;
      worst_value = norm;
    }
  }
  if (!(worst <= kUnitTolerance)) {
    std::string where;
    for (std::size_t i = 0; i < worst_point.size(); ++i)
      where += (i ? ", " : "") + format_double(worst_point[i]);
    throw NotUnit("g(T,T) = " + format_double(worst_value) + " at (" + where + "), expected " +
                  format_double(expected_norm));
  }

  // T_flat_i = sum_j m_ij T^j
  std::vector<Expr> flat(uz(n));
  for (int i = 0; i < n; ++i) {
    Expr acc = Expr::constant(0.0);
    for (int j = 0; j < n; ++j) acc = acc + m.component(i, j) * T.component(j);
    flat[uz(i)] = acc;
  }
  const Expr two = Expr::constant(2.0);
  std::vector<std::vector<Expr>> comps(uz(n), std::vector<Expr>(uz(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Expr term = two * (flat[uz(i)] * flat[uz(j)]);
      const Expr e = to_lorentzian ? m.component(i, j) - term : m.component(i, j) + term;
      comps[uz(i)][uz(j)] = e;
      comps[uz(j)][uz(i)] = e;
    }
  MetricField out(m.chart(), comps, to_lorentzian ? Signature::Lorentzian : Signature::Riemannian);
  for (const Vec& p : pts) validate_metric_at(out, p);
  return out;
}

SiblingPair make_sibling_pair(const MetricField& given, const VectorFieldSpec& T, std::span<const Vec> samples) {
  const std::vector<Vec> pts = default_samples(given.chart(), samples);
  for (const Vec& p : pts) validate_metric_at(given, p);
  MetricField other = sibling_metric(given, T, pts);
  if (given.signature() == Signature::Riemannian) return {given, std::move(other), T};
  return {std::move(other), given, T};
}

SiblingPairResiduals check_sibling_pair(const SiblingPair& pair, std::span<const Vec> samples) {
  SiblingPairResiduals r;
  for (const Vec& p : samples) {
    const SymBilinear g = pair.g.eval(p);
    const SymBilinear gl = pair.gL.eval(p);
    const Vec t = pair.T.eval(p);
    const Vec flat = g.lower(t);
    const SymBilinear expected = g - 2.0 * SymBilinear::outer(flat);
    r.transform = std::max(r.transform, max_abs_diff(gl, expected));
    r.unit_g = std::max(r.unit_g, std::abs(g.apply(t, t) - 1.0));
    r.unit_gL = std::max(r.unit_gL, std::abs(gl.apply(t, t) + 1.0));
  }
  return r;
}

TFieldReport verify_T_properties(const MetricField& g, const VectorFieldSpec& T, std::span<const Vec> samples) {
  if (g.signature() != Signature::Riemannian)
    throw SignatureError("T-field properties are measured against the Riemannian metric");
  TFieldReport rep;
  const int n = g.dim();
  for (const Vec& p : samples) {
    const FieldContext c = field_context(g, T, p);
    rep.unit_residual = std::max(rep.unit_residual, std::abs(c.mj.g.apply(c.Tv, c.Tv) - 1.0));

    const Vec accel = covariant_derivative(c.gamma, c.Tv, c.T);
    rep.geodesic_residual = std::max(rep.geodesic_residual, std::sqrt(std::max(0.0, c.mj.g.apply(accel, accel))));

    rep.symmetry_residual = std::max(rep.symmetry_residual, nabla_flat_from(c).asymmetry());

    const auto frame = frame_jets(c, nullptr);
    for (std::size_t a = 0; a < frame.size(); ++a)
      for (std::size_t b = a + 1; b < frame.size(); ++b) {
        Vec bracket(uz(n), 0.0);
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int i = 0; i < n; ++i)
            acc += frame[a][uz(i)].value() * frame[b][uz(k)].grad(i) -
                   frame[b][uz(i)].value() * frame[a][uz(k)].grad(i);
          bracket[uz(k)] = acc;
        }
        rep.integrability_residual =
            std::max(rep.integrability_residual, std::abs(c.mj.g.apply(c.Tv, bracket)));
      }
    ++rep.samples;
  }
  return rep;
}

Matrix nabla_T_flat_matrix(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p) {
  return nabla_flat_from(field_context(g, T, p));
}

SymBilinear nabla_T_flat(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p) {
  const Matrix a = nabla_T_flat_matrix(g, T, p);
  if (a.asymmetry() > kSelfAdjointTolerance * (1.0 + a.max_abs()))
    throw NotSymmetric("nabla T_flat is not symmetric (asymmetry " + format_double(a.asymmetry()) + ")");
  return SymBilinear::symmetric_part(a);
}

std::vector<Vec> normal_frame(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p,
                              const Matrix* basis) {
  return frame_values(field_context(g, T, p), basis);
}

namespace {

struct SpectrumWork {
  ShapeSpectrum spectrum;
  FieldContext context;
};

SpectrumWork spectrum_impl(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p,
                           const Matrix* basis) {
  SpectrumWork w{ShapeSpectrum{}, field_context(g, T, p)};
  const FieldContext& c = w.context;
  const int n = c.mj.n;
  const int m = n - 1;
  const Matrix a = nabla_flat_from(c);
  const std::vector<Vec> frame = frame_values(c, basis);

  Matrix d(m);  // d(a, b) = (nabla T_flat)(E_a, E_b)
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += frame[uz(i)][uz(k)] * a(k, l) * frame[uz(j)][uz(l)];
      d(i, j) = acc;
    }
  if (d.asymmetry() > kSelfAdjointTolerance * (1.0 + d.max_abs()))
    throw NotSymmetric("shape operator is not self-adjoint (asymmetry " + format_double(d.asymmetry()) + ")");

  const EigenSystem es = jacobi_eigen(SymBilinear::symmetric_part(d));
  ShapeSpectrum& s = w.spectrum;
  s.point.assign(p.begin(), p.end());
  s.eigenvalues = es.values;
  s.T = c.Tv;
  s.normal_basis = frame;
  s.coefficients = es.vectors;
  for (int i = 0; i < m; ++i) {
    Vec x(uz(n), 0.0);
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < n; ++k) x[uz(k)] += es.vectors(b, i) * frame[uz(b)][uz(k)];
    s.eigenframe.push_back(std::move(x));
  }
  return w;
}

}  // namespace

ShapeSpectrum shape_spectrum(const MetricField& g, const VectorFieldSpec& T, std::span<const double> p,
                             const Matrix* basis) {
  return spectrum_impl(g, T, p, basis).spectrum;
}

double ConnectionResiduals::max() const { return std::max({tt, xt, tx, xx}); }

ConnectionResiduals check_connection_relations(const SiblingPair& pair, std::span<const double> p) {
  const SpectrumWork w = spectrum_impl(pair.g, pair.T, p, nullptr);
  const FieldContext& c = w.context;
  const FieldContext cl = field_context(pair.gL, pair.T, p);
  const ShapeSpectrum& s = w.spectrum;
  const int n = c.mj.n;
  const int m = n - 1;

  // Eigenframe fields near p: constant combinations of the Gram-Schmidt frame.
  const auto frame = frame_jets(c, nullptr);
  std::vector<std::vector<Jet1>> x(uz(m));
  for (int i = 0; i < m; ++i) {
    x[uz(i)].assign(uz(n), Jet1(n, 0.0));
    for (int b = 0; b < m; ++b) {
      const Jet1 coef(n, s.coefficients(b, i));
      for (int k = 0; k < n; ++k) x[uz(i)][uz(k)] += coef * frame[uz(b)][uz(k)];
    }
  }
  std::vector<Vec> xv(uz(m));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) xv[uz(i)].push_back(x[uz(i)][uz(k)].value());
  std::vector<Jet1> tj;
  for (const auto& t : c.T) tj.emplace_back(t);

  ConnectionResiduals r;
  {
    const Vec a = covariant_of_values(cl.gamma, c.Tv, tj);
    const Vec b = covariant_of_values(c.gamma, c.Tv, tj);
    Vec sum(uz(n));
    for (int k = 0; k < n; ++k) sum[uz(k)] = a[uz(k)] + b[uz(k)];
    r.tt = max_abs(sum);
  }
  for (int i = 0; i < m; ++i) {
    Vec diff(uz(n));
    const Vec a = covariant_of_values(cl.gamma, xv[uz(i)], tj);
    const Vec b = covariant_of_values(c.gamma, xv[uz(i)], tj);
    for (int k = 0; k < n; ++k) diff[uz(k)] = a[uz(k)] - b[uz(k)];
    r.xt = std::max(r.xt, max_abs(diff));

    const Vec e = covariant_of_values(cl.gamma, c.Tv, x[uz(i)]);
    const Vec f = covariant_of_values(c.gamma, c.Tv, x[uz(i)]);
    for (int k = 0; k < n; ++k) diff[uz(k)] = e[uz(k)] - f[uz(k)];
    r.tx = std::max(r.tx, max_abs(diff));

    for (int j = 0; j < m; ++j) {
      const Vec gl = covariant_of_values(cl.gamma, xv[uz(i)], x[uz(j)]);
      const Vec gg = covariant_of_values(c.gamma, xv[uz(i)], x[uz(j)]);
      const double shift = i == j ? 2.0 * s.eigenvalues[uz(i)] : 0.0;
      for (int k = 0; k < n; ++k) diff[uz(k)] = gl[uz(k)] - shift * c.Tv[uz(k)] - gg[uz(k)];
      r.xx = std::max(r.xx, max_abs(diff));
    }
  }
  return r;
}

}  // namespace sibgeo
