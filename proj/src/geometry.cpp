#include "sibgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sibgeo/linalg.hpp"

namespace sibgeo {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

constexpr double kDetFloor = 1e-10;

}  // namespace

Chart::Chart(std::vector<std::string> names, std::vector<Interval> box, std::vector<Interval> domain)
    : names_(std::move(names)), box_(std::move(box)), domain_(std::move(domain)) {
  const std::size_t n = names_.size();
  if (n < 2) throw BadParameters("a chart needs at least 2 coordinates");
  if (n > static_cast<std::size_t>(kMaxDim))
    throw BadParameters("chart dimension exceeds " + std::to_string(kMaxDim));
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n)
    throw BadParameters("coordinate names must be unique");
  if (box_.size() != n) throw BadParameters("sampling box must have one interval per coordinate");
  if (domain_.empty()) domain_.resize(n);
  if (domain_.size() != n) throw BadParameters("domain must have one interval per coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    const Interval& b = box_[i];
    const Interval& d = domain_[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
      throw BadParameters("sampling bounds of '" + names_[i] + "' must be finite with lo < hi");
    if (!(b.lo > d.lo) || !(b.hi < d.hi))
      throw BadParameters("sampling bounds of '" + names_[i] + "' must lie inside the open domain");
  }
}

int Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

bool Chart::in_box(std::span<const double> p) const {
  for (std::size_t i = 0; i < box_.size(); ++i)
    if (!(p[i] >= box_[i].lo && p[i] <= box_[i].hi)) return false;
  return true;
}

bool Chart::in_domain(std::span<const double> p) const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (!(p[i] > domain_[i].lo && p[i] < domain_[i].hi)) return false;
  return true;
}

std::string_view to_string(Signature s) {
  return s == Signature::Riemannian ? "riemannian" : "lorentzian";
}

MetricField::MetricField(Chart chart, const std::vector<std::vector<Expr>>& components,
                         Signature signature)
    : chart_(std::move(chart)), signature_(signature) {
  const int n = chart_.dim();
  if (static_cast<int>(components.size()) != n)
    throw DimensionMismatch("metric needs " + std::to_string(n) + " rows");
  for (const auto& row : components)
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatch("metric needs " + std::to_string(n) + " columns");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Expr& a = components[uz(i)][uz(j)];
      if (!(a == components[uz(j)][uz(i)]))
        throw NotSymmetric("metric entries (" + std::to_string(i) + "," + std::to_string(j) + ") and (" +
                           std::to_string(j) + "," + std::to_string(i) + ") differ");
      if (a.max_coordinate() >= n)
        throw DimensionMismatch("metric entry references a coordinate outside the chart");
      upper_.push_back(a);
    }
}

const Expr& MetricField::component(int i, int j) const {
  return upper_[uz(packed_index(dim(), i, j))];
}

SymBilinear MetricField::eval(std::span<const double> p) const {
  const int n = dim();
  SymBilinear g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = component(i, j).eval(p);
  return g;
}

VectorFieldSpec::VectorFieldSpec(Chart chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != chart_.dim())
    throw DimensionMismatch("vector field needs one component per coordinate");
  for (const auto& c : components_)
    if (c.max_coordinate() >= chart_.dim())
      throw DimensionMismatch("vector component references a coordinate outside the chart");
}

Vec VectorFieldSpec::eval(std::span<const double> p) const {
  Vec v;
  v.reserve(components_.size());
  for (const auto& c : components_) v.push_back(c.eval(p));
  return v;
}

std::vector<Jet2> VectorFieldSpec::eval_jet(std::span<const double> p) const {
  std::vector<Jet2> v;
  v.reserve(components_.size());
  for (const auto& c : components_) v.push_back(c.eval_jet(p));
  return v;
}

double Christoffel::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

MetricJets metric_jets(const MetricField& m, std::span<const double> p) {
  const int n = m.dim();
  if (static_cast<int>(p.size()) != n) throw DimensionMismatch("point dimension differs from chart");
  MetricJets out;
  out.n = n;
  out.g = SymBilinear(n);
  out.dg.assign(uz(n * n * n), 0.0);
  out.ddg.assign(uz(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Jet2 jet = m.component(i, j).eval_jet(p);
      out.g(i, j) = jet.value();
      for (int k = 0; k < n; ++k) {
        out.dg[uz((k * n + i) * n + j)] = jet.grad(k);
        out.dg[uz((k * n + j) * n + i)] = jet.grad(k);
        for (int l = 0; l < n; ++l) {
          const double h = jet.hess(k, l);
          out.ddg[uz(((k * n + l) * n + i) * n + j)] = h;
          out.ddg[uz(((k * n + l) * n + j) * n + i)] = h;
        }
      }
    }
  return out;
}

namespace {

// S_ijl = d_i g_jl + d_j g_il - d_l g_ij  (twice the Christoffel symbol of the first kind)
double first_kind2(const MetricJets& mj, int i, int j, int l) {
  return mj.d(i, j, l) + mj.d(j, i, l) - mj.d(l, i, j);
}

Christoffel christoffel_from(const MetricJets& mj, const SymBilinear& g_inv) {
  const int n = mj.n;
  Christoffel gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += g_inv(k, l) * first_kind2(mj, i, j, l);
        gamma(k, i, j) = 0.5 * acc;
        gamma(k, j, i) = 0.5 * acc;
      }
    }
  return gamma;
}

}  // namespace

Christoffel christoffel(const MetricField& m, std::span<const double> p) {
  const MetricJets mj = metric_jets(m, p);
  return christoffel_from(mj, inverse(mj.g, kDetFloor));
}

PointGeometry riemann_at(const MetricField& m, std::span<const double> p) {
  const MetricJets mj = metric_jets(m, p);
  const int n = mj.n;

  PointGeometry pg;
  pg.point.assign(p.begin(), p.end());
  pg.g = mj.g;
  pg.g_inv = inverse(mj.g, kDetFloor);
  pg.christoffel = christoffel_from(mj, pg.g_inv);
  const SymBilinear& ginv = pg.g_inv;
  const Christoffel& gamma = pg.christoffel;

  // d_m g^kl = -g^ka (d_m g_ab) g^bl
  std::vector<double> dginv(uz(n * n * n), 0.0);
  for (int mm = 0; mm < n; ++mm)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) acc += ginv(k, a) * mj.d(mm, a, b) * ginv(b, l);
        dginv[uz((mm * n + k) * n + l)] = -acc;
      }

  // dgamma[((m*n + k)*n + i)*n + j] = d_m G^k_ij
  std::vector<double> dgamma(uz(n * n * n * n), 0.0);
  for (int mm = 0; mm < n; ++mm)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) {
            const double ds = mj.dd(mm, i, j, l) + mj.dd(mm, j, i, l) - mj.dd(mm, l, i, j);
            acc += dginv[uz((mm * n + k) * n + l)] * first_kind2(mj, i, j, l) + ginv(k, l) * ds;
          }
          dgamma[uz(((mm * n + k) * n + i) * n + j)] = 0.5 * acc;
          dgamma[uz(((mm * n + k) * n + j) * n + i)] = 0.5 * acc;
        }
  auto dG = [&](int mm, int k, int i, int j) { return dgamma[uz(((mm * n + k) * n + i) * n + j)]; };

  // R^l_ijk, then lower the last index.
  std::vector<double> rup(uz(n * n * n * n), 0.0);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = dG(i, l, j, k) - dG(j, l, i, k);
          for (int mm = 0; mm < n; ++mm)
            acc += gamma(l, i, mm) * gamma(mm, j, k) - gamma(l, j, mm) * gamma(mm, i, k);
          rup[uz(((l * n + i) * n + j) * n + k)] = acc;
        }
  pg.riemann = Curvature4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int mm = 0; mm < n; ++mm) acc += pg.g(l, mm) * rup[uz(((mm * n + i) * n + j) * n + k)];
          pg.riemann(i, j, k, l) = acc;
        }

  pg.ricci = trace_with_metric(pg.riemann, ginv);
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += ginv(a, b) * pg.ricci(a, b);
  pg.scalar = s;
  return pg;
}

void validate_metric_at(const MetricField& m, std::span<const double> p) {
  const SymBilinear g = m.eval(p);
  const double det = determinant(g.to_matrix());
  if (!(std::abs(det) > kDetFloor))
    throw SingularMetric("metric is singular at the sample point (det = " + std::to_string(det) + ")");
  const EigenSystem es = jacobi_eigen(g);
  int negative = 0;
  for (double v : es.values)
    if (v < 0.0) ++negative;
  const int expected = m.signature() == Signature::Riemannian ? 0 : 1;
  if (negative != expected)
    throw SignatureError("metric has " + std::to_string(negative) + " negative eigenvalue(s), expected " +
                         std::to_string(expected) + " for a " + std::string(to_string(m.signature())) +
                         " metric");
}

double sectional(const PointGeometry& pg, std::span<const double> u, std::span<const double> v) {
  const double uu = pg.g.apply(u, u), vv = pg.g.apply(v, v), uv = pg.g.apply(u, v);
  const double area = uu * vv - uv * uv;
  if (!(std::abs(area) > 1e-10)) throw DegeneratePlane("plane spanned by u, v is degenerate");
  return pg.riemann.apply(u, v, v, u) / area;
}

SymBilinear hessian(const MetricField& m, const Expr& f, std::span<const double> p) {
  const int n = m.dim();
  const Christoffel gamma = christoffel(m, p);
  const Jet2 fj = f.eval_jet(p);
  SymBilinear h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = fj.hess(i, j);
      for (int k = 0; k < n; ++k) acc -= gamma(k, i, j) * fj.grad(k);
      h(i, j) = acc;
    }
  return h;
}

namespace {

Vec geodesic_acceleration(const MetricField& m, std::span<const double> x, std::span<const double> v) {
  const Christoffel gamma = christoffel(m, x);
  const int n = m.dim();
  Vec a(uz(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += gamma(k, i, j) * v[uz(i)] * v[uz(j)];
    a[uz(k)] = -acc;
  }
  return a;
}

}  // namespace

Trajectory integrate_geodesic(const MetricField& m, std::span<const double> p0,
                              std::span<const double> v0, double step, int n_steps) {
  const int n = m.dim();
  if (!(step > 0.0)) throw BadParameters("geodesic step must be positive");
  if (n_steps < 0) throw BadParameters("number of steps must be nonnegative");
  if (static_cast<int>(p0.size()) != n || static_cast<int>(v0.size()) != n)
    throw DimensionMismatch("initial point and velocity must match the chart dimension");

  Trajectory traj;
  GeodesicState cur;
  cur.x.assign(p0.begin(), p0.end());
  cur.v.assign(v0.begin(), v0.end());
  try {
    cur.speed = m.eval(cur.x).apply(cur.v, cur.v);
  } catch (const Error& e) {
    traj.stopped_early = true;
    traj.stop_reason = e.what();
    return traj;
  }
  traj.states.push_back(cur);

  auto axpy = [](const Vec& base, double h, const Vec& d) {
    Vec r = base;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * d[i];
    return r;
  };

  for (int step_index = 1; step_index <= n_steps; ++step_index) {
    GeodesicState next;
    try {
      const Vec& x = cur.x;
      const Vec& v = cur.v;
      const Vec k1x = v;
      const Vec k1v = geodesic_acceleration(m, x, v);
      const Vec x2 = axpy(x, 0.5 * step, k1x), v2 = axpy(v, 0.5 * step, k1v);
      const Vec k2v = geodesic_acceleration(m, x2, v2);
      const Vec x3 = axpy(x, 0.5 * step, v2), v3 = axpy(v, 0.5 * step, k2v);
      const Vec k3v = geodesic_acceleration(m, x3, v3);
      const Vec x4 = axpy(x, step, v3), v4 = axpy(v, step, k3v);
      const Vec k4v = geodesic_acceleration(m, x4, v4);

      next.x = x;
      next.v = v;
      for (int i = 0; i < n; ++i) {
        next.x[uz(i)] += step / 6.0 * (k1x[uz(i)] + 2.0 * v2[uz(i)] + 2.0 * v3[uz(i)] + v4[uz(i)]);
        next.v[uz(i)] += step / 6.0 * (k1v[uz(i)] + 2.0 * k2v[uz(i)] + 2.0 * k3v[uz(i)] + k4v[uz(i)]);
      }
      next.s = step * step_index;
      if (!m.chart().in_box(next.x)) {
        traj.stopped_early = true;
        traj.stop_reason = "left the sampling box";
        break;
      }
      next.speed = m.eval(next.x).apply(next.v, next.v);
    } catch (const Error& e) {
      traj.stopped_early = true;
      traj.stop_reason = e.what();
      break;
    }
    traj.states.push_back(next);
    cur = std::move(next);
  }
  return traj;
}

}  // namespace sibgeo
