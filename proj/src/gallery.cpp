#include "sibgeo/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sibgeo/identities.hpp"
#include "sibgeo/sampling.hpp"

namespace sibgeo {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

MetricField diagonal_metric(const Chart& chart, const std::vector<std::string>& diag, Signature sig) {
  const int n = chart.dim();
  std::vector<std::vector<Expr>> comps(uz(n), std::vector<Expr>(uz(n)));
  for (int i = 0; i < n; ++i) comps[uz(i)][uz(i)] = chart.parse(diag[uz(i)]);
  return MetricField(chart, comps, sig);
}

VectorFieldSpec field(const Chart& chart, const std::vector<std::string>& comps) {
  std::vector<Expr> e;
  for (const auto& c : comps) e.push_back(chart.parse(c));
  return VectorFieldSpec(chart, std::move(e));
}

// "x1+2" or "x1-2"
std::string shifted(const std::string& name, double a) {
  if (a < 0) return name + "-" + format_double(-a);
  return name + "+" + format_double(a);
}

const std::vector<std::string> kTFieldChecks = {"t-properties", "proposition", "ricci-relation",
                                                "connection-relations", "bochner", "bochner-inequality"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<const char*> extra) {
  for (const char* e : extra) base.emplace_back(e);
  return base;
}

Chart sphere_chart(int n) {
  std::vector<std::string> names{"t"};
  std::vector<Interval> box{{-2.0, 2.0}};
  std::vector<Interval> domain{{}};
  const double pi = std::numbers::pi;
  for (int k = 1; k < n; ++k) {
    names.push_back("th" + std::to_string(k));
    box.push_back({0.2, pi - 0.2});
    domain.push_back(k + 1 < n ? Interval{0.0, pi} : Interval{});
  }
  return Chart(names, box, domain);
}

// warp * (round metric of S^{n-1} in polar angles)
std::vector<std::string> sphere_part(int n, const std::string& warp) {
  std::vector<std::string> out;
  std::string factor = warp;
  for (int k = 1; k < n; ++k) {
    out.push_back(factor);
    factor += "*sin(th" + std::to_string(k) + ")^2";
  }
  return out;
}

GalleryEntry de_sitter_impl(int n, double r, double eps) {
  if (n < 3 || n > 6) throw BadParameters("de Sitter dimension must be between 3 and 6");
  if (!(r > 0) || !std::isfinite(r)) throw BadParameters("de Sitter radius must be positive");
  if (!(eps >= 0) || !std::isfinite(eps)) throw BadParameters("perturbation must be non-negative");
  const Chart chart = sphere_chart(n);
  const std::string warp = format_double(r * r) + "*cosh(t/" + format_double(r) + ")^2";

  std::vector<std::string> diag;
  std::vector<std::string> t(uz(n), "0");
  if (eps == 0) {
    diag.push_back("-1");
    t[0] = "-1";
  } else {
    const std::string lapse = "1+" + format_double(eps) + "*t^2";
    diag.push_back("-(" + lapse + ")");
    t[0] = "-1/sqrt(" + lapse + ")";
  }
  for (auto& s : sphere_part(n, warp)) diag.push_back(std::move(s));

  const MetricField gl = diagonal_metric(chart, diag, Signature::Lorentzian);
  GalleryEntry e;
  e.name = "de-sitter";
  e.parameters = {{"n", n}, {"r", r}};
  e.pair = make_sibling_pair(gl, field(chart, t));
  if (eps == 0) {
    e.lambda = 1.0 / (r * r);
    e.expected = with(kTFieldChecks, {"theorem-eq1", "constant-curvature", "remark1-sectionals", "riccati"});
  } else {
    e.parameters["perturbation"] = eps;
    e.expected = kTFieldChecks;
  }
  return e;
}

}  // namespace

const Chart& pp_wave_chart() {
  static const Chart chart({"v", "u", "x", "y"}, std::vector<Interval>(4, Interval{-1.5, 1.5}));
  return chart;
}

GalleryEntry de_sitter(int n, double r) { return de_sitter_impl(n, r, 0.0); }

GalleryEntry perturbed_de_sitter(int n, double r, double eps) { return de_sitter_impl(n, r, eps); }

GalleryEntry example2(double a) {
  if (!std::isfinite(a)) throw BadParameters("parameter a must be finite");
  const Chart chart({"x1", "x2", "x3"}, {{-a + 0.5, -a + 4.0}, {-2.0, 2.0}, {-2.0, 2.0}},
                    {{-a, std::numeric_limits<double>::infinity()}, {}, {}});
  const std::string s = "(" + shifted("x1", a) + ")";
  const std::string H = s + "^2/2";
  const std::string df = "sqrt(2)/" + s;

  std::vector<std::vector<Expr>> comps(3, std::vector<Expr>(3));
  const Expr zero = chart.parse("0");
  const Expr one = chart.parse("1");
  comps[0] = {zero, one, zero};
  comps[1] = {one, chart.parse(H), zero};
  comps[2] = {zero, zero, chart.parse("(" + H + ")/2")};
  const MetricField gl(chart, comps, Signature::Lorentzian);

  GalleryEntry e;
  e.name = "example2";
  e.parameters = {{"a", a}};
  e.pair = make_sibling_pair(gl, field(chart, {"-(" + df + ")/2*" + s + "^2", df, "0"}));
  // Ric_L = g_L in dimension 3, i.e. sectional curvature 1/2.
  e.lambda = 0.5;
  e.expected = with(kTFieldChecks, {"theorem-eq1", "constant-curvature", "remark1-sectionals", "riccati"});
  return e;
}

GalleryEntry pp_wave(const Expr& f, const Expr& h, const Expr& H) {
  const Chart& chart = pp_wave_chart();
  const std::vector<Vec> samples = halton_points(chart, 32);
  const Big3Residuals big3 = check_big3(f, h, H, samples, kDefaultTolerance);
  if (!big3.result.passed)
    throw Big3Violated("profile fails the compatibility conditions (residual " +
                       format_double(big3.result.max_residual) + ")");

  std::vector<std::vector<Expr>> comps(4, std::vector<Expr>(4));
  const Expr one = Expr::constant(1.0);
  comps[0][1] = comps[1][0] = one;
  comps[1][1] = H;
  comps[2][2] = comps[3][3] = one;
  const MetricField gl(chart, comps, Signature::Lorentzian);
  const Expr tv = Expr::constant(0.5) * (H + f * f + h * h + one);
  const VectorFieldSpec T(chart, {tv, -one, f, h});

  GalleryEntry e;
  e.name = "pp-wave";
  e.pair = make_sibling_pair(gl, T, samples);
  e.pp = PpWaveProfile{f, h, H};
  e.expected = with(kTFieldChecks, {"big3"});
  return e;
}

GalleryEntry plane_wave() {
  const Chart& c = pp_wave_chart();
  GalleryEntry e = pp_wave(c.parse("y"), c.parse("x"), c.parse("x^2+y^2"));
  e.name = "plane-wave";
  e.potential = c.parse("u");
  e.expected.emplace_back("bakry-emery");
  return e;
}

GalleryEntry flat_product(int n) {
  if (n < 2 || n > kMaxDim) throw BadParameters("dimension must be between 2 and 8");
  std::vector<std::string> names{"t"};
  for (int k = 1; k < n; ++k) names.push_back("x" + std::to_string(k));
  const Chart chart(names, std::vector<Interval>(uz(n), Interval{-2.0, 2.0}));
  std::vector<std::string> t(uz(n), "0");
  t[0] = "1";
  GalleryEntry e;
  e.name = "flat-product";
  e.parameters = {{"n", n}};
  e.pair = make_sibling_pair(diagonal_metric(chart, std::vector<std::string>(uz(n), "1"), Signature::Riemannian),
                             field(chart, t));
  e.lambda = 0.0;
  e.expected = with(kTFieldChecks, {"theorem-eq1", "constant-curvature"});
  return e;
}

std::vector<std::string> gallery_names() {
  return {"de-sitter", "example2", "plane-wave", "pp-wave", "flat-product"};
}

namespace {

double number_or(const std::map<std::string, double>& m, const char* key, double fallback) {
  const auto it = m.find(key);
  return it == m.end() ? fallback : it->second;
}

int integer_param(const std::map<std::string, double>& m, const char* key, int fallback) {
  const double v = number_or(m, key, fallback);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw BadParameters(std::string(key) + " must be an integer");
  return static_cast<int>(v);
}

void allow_keys(const std::string& name, const std::map<std::string, double>& numbers,
                const std::map<std::string, std::string>& expressions) {
  const GalleryParameters allowed = gallery_parameters(name);
  auto known = [](const std::string& k, const std::vector<std::string>& keys) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
  };
  for (const auto& [k, v] : numbers)
    if (!known(k, allowed.numbers)) throw BadParameters("unknown parameter '" + k + "' for " + name);
  for (const auto& [k, v] : expressions)
    if (!known(k, allowed.expressions)) throw BadParameters("unknown parameter '" + k + "' for " + name);
}

}  // namespace

GalleryParameters gallery_parameters(const std::string& name) {
  if (name == "de-sitter") return {{"n", "r", "perturbation"}, {}};
  if (name == "example2") return {{"a"}, {}};
  if (name == "plane-wave") return {};
  if (name == "pp-wave") return {{}, {"f", "h", "H"}};
  if (name == "flat-product") return {{"n"}, {}};
  throw BadParameters("unknown gallery entry '" + name + "'");
}

GalleryEntry gallery_entry(const std::string& name, const std::map<std::string, double>& numbers,
                           const std::map<std::string, std::string>& expressions) {
  if (name == "de-sitter") {
    allow_keys(name, numbers, expressions);
    return perturbed_de_sitter(integer_param(numbers, "n", 3), number_or(numbers, "r", 1.0),
                               number_or(numbers, "perturbation", 0.0));
  }
  if (name == "example2") {
    allow_keys(name, numbers, expressions);
    return example2(number_or(numbers, "a", 2.0));
  }
  if (name == "plane-wave") {
    allow_keys(name, numbers, expressions);
    return plane_wave();
  }
  if (name == "pp-wave") {
    allow_keys(name, numbers, expressions);
    const Chart& c = pp_wave_chart();
    auto get = [&](const char* key, const char* fallback) {
      const auto it = expressions.find(key);
      return c.parse(it == expressions.end() ? fallback : it->second);
    };
    return pp_wave(get("f", "y^2"), get("h", "2*x*y"), get("H", "y^4+4*x^2*y^2"));
  }
  if (name == "flat-product") {
    allow_keys(name, numbers, expressions);
    return flat_product(integer_param(numbers, "n", 3));
  }
  throw BadParameters("unknown gallery entry '" + name + "'");
}

}  // namespace sibgeo
