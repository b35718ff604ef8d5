#include "sibgeo/identities.hpp"

#include <algorithm>
#include <cmath>

#include "sibgeo/linalg.hpp"

namespace sibgeo {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

double max_of(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

SymBilinear flat_outer(const SymBilinear& g, const Vec& t) { return SymBilinear::outer(g.lower(t)); }

// Rm(T, ., ., T)
SymBilinear sandwich(const Curvature4& r, const Vec& t) {
  const int n = r.dim();
  SymBilinear out(n);
  for (int y = 0; y < n; ++y)
    for (int z = y; z < n; ++z) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int d = 0; d < n; ++d) acc += t[uz(a)] * t[uz(d)] * r(a, y, z, d);
      out(y, z) = acc;
    }
  return out;
}

double divergence(const SiblingPair& pair, std::span<const double> p) {
  const SymBilinear a = SymBilinear::symmetric_part(nabla_T_flat_matrix(pair.g, pair.T, p));
  const SymBilinear gi = inverse(pair.g.eval(p));
  const int n = a.dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += gi(i, j) * a(i, j);
  return acc;
}

// One RK4 step of x' = T(x).
Vec flow_step(const VectorFieldSpec& T, const Vec& x, double h) {
  const std::size_t n = x.size();
  auto shifted = [&](const Vec& k, double c) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + c * k[i];
    return y;
  };
  const Vec k1 = T.eval(x);
  const Vec k2 = T.eval(shifted(k1, h / 2));
  const Vec k3 = T.eval(shifted(k2, h / 2));
  const Vec k4 = T.eval(shifted(k3, h));
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return y;
}

Vec flow(const VectorFieldSpec& T, Vec x, double s, int steps) {
  const double h = s / steps;
  for (int k = 0; k < steps; ++k) x = flow_step(T, x, h);
  return x;
}

}  // namespace

void ResidualAccumulator::add(double normalized, double raw, std::span<const double> point) {
  ++result_.samples;
  // NaN is sticky: once a sample is non-finite the check cannot pass.
  if (!std::isnan(result_.max_residual) && (!any_ || std::isnan(normalized) || normalized > result_.max_residual)) {
    result_.max_residual = normalized;
    result_.worst_point.assign(point.begin(), point.end());
  }
  if (!std::isnan(result_.raw_residual) && (std::isnan(raw) || raw > result_.raw_residual)) result_.raw_residual = raw;
  any_ = true;
}

IdentityResult ResidualAccumulator::finish() const {
  IdentityResult r = result_;
  r.passed = r.error.empty() && r.samples > 0 && r.max_residual < r.tolerance;
  return r;
}

TFieldReport require_t_properties(const SiblingPair& pair, std::span<const Vec> samples) {
  const TFieldReport rep = verify_T_properties(pair.g, pair.T, samples);
  if (!rep.passes(kHypothesisTolerance)) {
    throw TPropertiesViolated("T fails its hypotheses: unit " + format_double(rep.unit_residual) + ", geodesic " +
                              format_double(rep.geodesic_residual) + ", symmetry " +
                              format_double(rep.symmetry_residual) + ", integrability " +
                              format_double(rep.integrability_residual));
  }
  return rep;
}

IdentityResult check_t_properties(const SiblingPair& pair, std::span<const Vec> samples, double tol) {
  ResidualAccumulator acc("t-properties", tol);
  for (const Vec& p : samples) {
    const TFieldReport r = verify_T_properties(pair.g, pair.T, std::span<const Vec>(&p, 1));
    const double m = max_of({r.unit_residual, r.geodesic_residual, r.symmetry_residual, r.integrability_residual});
    acc.add(m, m, p);
  }
  return acc.finish();
}

IdentityResult check_proposition(const SiblingPair& pair, std::span<const Vec> samples, double tol) {
  require_t_properties(pair, samples);
  ResidualAccumulator acc("proposition", tol);
  for (const Vec& p : samples) {
    const PointGeometry g = riemann_at(pair.g, p);
    const PointGeometry gl = riemann_at(pair.gL, p);
    const SymBilinear a = nabla_T_flat(pair.g, pair.T, p);
    const Curvature4 k = kn_product(a, a);
    const Curvature4 diff = gl.riemann - g.riemann - k;
    const double raw = diff.max_abs();
    acc.add(raw / (1.0 + max_of({gl.riemann.max_abs(), g.riemann.max_abs(), k.max_abs()})), raw, p);
  }
  return acc.finish();
}

std::pair<IdentityResult, IdentityResult> check_theorem_eq1(const SiblingPair& pair, double lambda,
                                                            std::span<const Vec> samples, double tol) {
  require_t_properties(pair, samples);
  ResidualAccumulator first("theorem-eq1-riemannian", tol);
  ResidualAccumulator second("theorem-eq1-lorentzian", tol);
  for (const Vec& p : samples) {
    const PointGeometry g = riemann_at(pair.g, p);
    const PointGeometry gl = riemann_at(pair.gL, p);
    const SymBilinear a = nabla_T_flat(pair.g, pair.T, p);
    const Curvature4 k = kn_product(a, a);
    const Curvature4 gg = (0.5 * lambda) * kn_product(g.g, g.g);
    const Curvature4 gw = (2.0 * lambda) * kn_product(g.g, flat_outer(g.g, pair.T.eval(p)));
    const Curvature4 d1 = g.riemann - gg + gw + k;
    const double raw1 = d1.max_abs();
    first.add(raw1 / (1.0 + max_of({g.riemann.max_abs(), gg.max_abs(), gw.max_abs(), k.max_abs()})), raw1, p);

    const Curvature4 ll = (0.5 * lambda) * kn_product(gl.g, gl.g);
    const Curvature4 d2 = gl.riemann - ll;
    const double raw2 = d2.max_abs();
    second.add(raw2 / (1.0 + max_of({gl.riemann.max_abs(), ll.max_abs()})), raw2, p);
  }
  return {first.finish(), second.finish()};
}

ConstantCurvatureFit fit_constant_curvature(const MetricField& m, std::span<const Vec> samples) {
  ConstantCurvatureFit fit;
  std::vector<Curvature4> rms, bases;
  double num = 0.0, den = 0.0;
  for (const Vec& p : samples) {
    const PointGeometry pg = riemann_at(m, p);
    Curvature4 b = 0.5 * kn_product(pg.g, pg.g);
    const auto rd = pg.riemann.data();
    const auto bd = b.data();
    for (std::size_t i = 0; i < rd.size(); ++i) {
      num += rd[i] * bd[i];
      den += bd[i] * bd[i];
    }
    rms.push_back(pg.riemann);
    bases.push_back(std::move(b));
  }
  fit.samples = static_cast<int>(rms.size());
  if (den <= 0.0) return fit;
  fit.lambda_hat = num / den;
  for (std::size_t s = 0; s < rms.size(); ++s)
    fit.residual = std::max(fit.residual, (rms[s] - fit.lambda_hat * bases[s]).max_abs());
  return fit;
}

IdentityResult check_ricci_relation(const SiblingPair& pair, std::span<const Vec> samples, double tol) {
  require_t_properties(pair, samples);
  ResidualAccumulator acc("ricci-relation", tol);
  for (const Vec& p : samples) {
    const PointGeometry g = riemann_at(pair.g, p);
    const PointGeometry gl = riemann_at(pair.gL, p);
    const Vec t = pair.T.eval(p);
    const SymBilinear a = nabla_T_flat(pair.g, pair.T, p);
    const SymBilinear trk = trace_with_metric(kn_product(a, a), g.g_inv, 0, 3);
    const SymBilinear rt = 2.0 * sandwich(gl.riemann, t);
    const SymBilinear diff = g.ricci - gl.ricci - rt + trk;
    const double tt = std::abs(g.ricci.apply(t, t) - gl.ricci.apply(t, t));
    const double raw = std::max(diff.max_abs(), tt);
    const double scale = 1.0 + max_of({g.ricci.max_abs(), gl.ricci.max_abs(), rt.max_abs(), trk.max_abs()});
    acc.add(raw / scale, raw, p);
  }
  return acc.finish();
}

IdentityResult check_connection(const SiblingPair& pair, std::span<const Vec> samples, double tol) {
  require_t_properties(pair, samples);
  ResidualAccumulator acc("connection-relations", tol);
  for (const Vec& p : samples) {
    const double r = check_connection_relations(pair, p).max();
    acc.add(r, r, p);
  }
  return acc.finish();
}

IdentityResult check_remark1_sectionals(const SiblingPair& pair, double lambda, std::span<const Vec> samples,
                                        double tol) {
  require_t_properties(pair, samples);
  ResidualAccumulator acc("remark1-sectionals", tol);
  for (const Vec& p : samples) {
    const PointGeometry pg = riemann_at(pair.g, p);
    const ShapeSpectrum s = shape_spectrum(pair.g, pair.T, p);
    const std::size_t m = s.eigenframe.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double k = sectional(pg, s.T, s.eigenframe[i]);
      worst = std::max(worst, std::abs(k + lambda) / (1.0 + std::abs(lambda)));
      for (std::size_t j = i + 1; j < m; ++j) {
        const double expected = lambda - 2.0 * s.eigenvalues[i] * s.eigenvalues[j];
        const double kij = sectional(pg, s.eigenframe[i], s.eigenframe[j]);
        worst = std::max(worst, std::abs(kij - expected) / (1.0 + std::abs(expected)));
      }
    }
    acc.add(worst, worst, p);
  }
  return acc.finish();
}

BochnerResult check_bochner(const SiblingPair& pair, std::span<const Vec> curve_starts, const BochnerOptions& o) {
  if (o.points_per_curve < 1 || !(o.spacing > 0) || o.substeps < 1 || !(o.fd_step > 0))
    throw BadParameters("Bochner options must be positive");
  require_t_properties(pair, curve_starts);
  const int n = pair.g.dim();
  const Chart& chart = pair.g.chart();
  ResidualAccumulator ident("bochner", o.tolerance);
  ResidualAccumulator ineq("bochner-inequality", o.tolerance);
  BochnerResult out;
  bool first = true;
  const double h = o.fd_step;

  for (const Vec& start : curve_starts) {
    Vec x = start;
    for (int k = 0; k < o.points_per_curve; ++k) {
      if (k > 0) x = flow(pair.T, x, o.spacing, o.substeps);
      if (!chart.in_box(x)) break;

      const ShapeSpectrum s = shape_spectrum(pair.g, pair.T, x);
      double div = 0.0, sumsq = 0.0;
      for (double l : s.eigenvalues) {
        div += l;
        sumsq += l * l;
      }
      const double ric_tt = riemann_at(pair.g, x).ricci.apply(s.T, s.T);
      const double fm2 = divergence(pair, flow(pair.T, x, -2 * h, 2));
      const double fm1 = divergence(pair, flow(pair.T, x, -h, 1));
      const double fp1 = divergence(pair, flow(pair.T, x, h, 1));
      const double fp2 = divergence(pair, flow(pair.T, x, 2 * h, 2));
      const double tdiv = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);

      const double r = std::abs(tdiv + ric_tt + sumsq);
      ident.add(r, r, x);
      const double bound = -ric_tt - div * div / (n - 1);
      const double gap = bound - tdiv;
      const double violation = std::max(0.0, -gap - o.slack);
      ineq.add(violation, violation, x);
      if (first) {
        out.min_gap = out.max_gap = gap;
        first = false;
      } else {
        out.min_gap = std::min(out.min_gap, gap);
        out.max_gap = std::max(out.max_gap, gap);
      }
      ++out.points;
    }
  }
  out.identity = ident.finish();
  out.inequality = ineq.finish();
  return out;
}

double riccati_residual(int n, double lambda, const std::function<double(double)>& u,
                        const std::function<double(double)>& du, std::span<const double> grid) {
  if (n < 2) throw BadParameters("dimension must be at least 2");
  double worst = 0.0;
  for (double s : grid) {
    const double v = u(s);
    worst = std::max(worst, std::abs(du(s) - ((n - 1) * lambda - v * v / (n - 1))));
  }
  return worst;
}

double riccati_residual(int n, double lambda, double c, std::span<const double> grid) {
  if (!(lambda > 0)) throw BadParameters("lambda must be positive");
  const double k = std::sqrt(lambda);
  const double m = n - 1;
  return riccati_residual(
      n, lambda, [&](double s) { return m * k * std::tanh(k * s + c); },
      [&](double s) {
        const double ch = std::cosh(k * s + c);
        return m * lambda / (ch * ch);
      },
      grid);
}

double riccati_constant_residual(int n, double lambda, double sign, std::span<const double> grid) {
  if (!(lambda >= 0)) throw BadParameters("lambda must be non-negative");
  const double u0 = (sign < 0 ? -1.0 : 1.0) * (n - 1) * std::sqrt(lambda);
  return riccati_residual(n, lambda, [&](double) { return u0; }, [](double) { return 0.0; }, grid);
}

IdentityResult check_bakry_emery(const MetricField& gL, const Expr& u, std::span<const Vec> samples,
                                 double synthetic_dimension, double tol) {
  const int n = gL.dim();
  if (synthetic_dimension == n || !std::isfinite(synthetic_dimension))
    throw BadParameters("synthetic dimension must differ from the manifold dimension");
  const double c = 1.0 / (synthetic_dimension - n);
  ResidualAccumulator acc("bakry-emery", tol);
  for (const Vec& p : samples) {
    const PointGeometry pg = riemann_at(gL, p);
    const SymBilinear hess = hessian(gL, u, p);
    const Jet2 du = u.eval_jet(p);
    Vec grad(uz(n));
    for (int i = 0; i < n; ++i) grad[uz(i)] = du.grad(i);
    const SymBilinear r = pg.ricci + hess - c * SymBilinear::outer(grad);
    const double m = r.max_abs();
    acc.add(m, m, p);
  }
  return acc.finish();
}

Big3Residuals check_big3(const Expr& f, const Expr& h, const Expr& H, std::span<const Vec> samples, double tol) {
  constexpr int kU = 1, kX = 2, kY = 3;
  for (const Expr* e : {&f, &h, &H}) {
    if (e->references(0)) throw BadParameters("pp-wave profile functions must not depend on v");
    if (e->max_coordinate() > kY) throw DimensionMismatch("pp-wave profile functions live on (v, u, x, y)");
  }
  Big3Residuals out;
  ResidualAccumulator acc("big3", tol);
  for (const Vec& p : samples) {
    if (p.size() != 4) throw DimensionMismatch("pp-wave samples must be 4-dimensional");
    const Jet2 jf = f.eval_jet(p), jh = h.eval_jet(p), jH = H.eval_jet(p);
    const double a = std::abs(jh.grad(kX) - jf.grad(kY));
    const double b = std::abs(jf.value() * jf.grad(kX) + jh.value() * jf.grad(kY) - jf.grad(kU) - 0.5 * jH.grad(kX));
    const double c = std::abs(jh.value() * jh.grad(kY) + jf.value() * jh.grad(kX) - jh.grad(kU) - 0.5 * jH.grad(kY));
    out.integrability = std::max(out.integrability, a);
    out.first = std::max(out.first, b);
    out.second = std::max(out.second, c);
    const double m = max_of({a, b, c});
    acc.add(m, m, p);
  }
  out.result = acc.finish();
  return out;
}

}  // namespace sibgeo
