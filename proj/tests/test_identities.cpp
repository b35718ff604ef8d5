#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sibgeo/identities.hpp"

using namespace sibgeo;
using namespace testing_helpers;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> s;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int k = 0; k <= n; ++k) s.push_back(lo + k * step);
  return s;
}

// Two-dimensional pair g = dt^2 + phi^2 dx^2 with T = d/dt.
SiblingPair warped_2d(const std::string& phi) {
  const Chart c({"t", "x"}, {Interval{-1, 1}, Interval{-1, 1}});
  return make_sibling_pair(diag_metric(c, {"1", "(" + phi + ")^2"}, Signature::Riemannian), field(c, {"1", "0"}));
}

SiblingPair broken_pair() {
  const Chart c = box_chart({"x1", "x2", "x3"}, -1.5, 1.5);
  return make_sibling_pair(diag_metric(c, {"1", "1", "1"}, Signature::Riemannian),
                           field(c, {"cos(x2)", "sin(x2)", "0"}));
}

// pp-wave g_L for an arbitrary H, bypassing the compatibility check.
MetricField pp_lorentzian(const std::string& H) {
  return metric(pp_wave_chart(), {{"0", "1", "0", "0"}, {"1", H, "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}},
                Signature::Lorentzian);
}

}  // namespace

TEST_CASE("hypotheses are enforced") {
  const SiblingPair p = broken_pair();
  const auto pts = halton_points(p.g.chart(), 10);
  CHECK_THROWS_AS(check_proposition(p, pts), TPropertiesViolated);
  CHECK_THROWS_AS(check_theorem_eq1(p, 0.0, pts), TPropertiesViolated);
  CHECK_THROWS_AS(check_ricci_relation(p, pts), TPropertiesViolated);
  CHECK_THROWS_AS(check_connection(p, pts), TPropertiesViolated);
  CHECK_THROWS_AS(check_remark1_sectionals(p, 0.0, pts), TPropertiesViolated);
  CHECK_THROWS_AS(check_bochner(p, pts), TPropertiesViolated);
  const IdentityResult t = check_t_properties(p, pts);
  CHECK_FALSE(t.passed);
  CHECK(t.max_residual > 0.1);
}

TEST_CASE("ResidualAccumulator") {
  ResidualAccumulator empty("x", 1.0);
  CHECK_FALSE(empty.finish().passed);
  ResidualAccumulator a("x", 1e-3);
  a.add(1e-5, 2e-5, std::vector<double>{1, 2});
  a.add(2e-4, 5e-4, std::vector<double>{3, 4});
  a.add(1e-6, 1e-6, std::vector<double>{5, 6});
  const IdentityResult r = a.finish();
  CHECK(r.passed);
  CHECK(r.samples == 3);
  CHECK(r.max_residual == 2e-4);
  CHECK(r.raw_residual == 5e-4);
  CHECK(r.worst_point == std::vector<double>{3, 4});
  a.add(NAN, NAN, std::vector<double>{7, 8});
  a.add(1e-9, 1e-9, std::vector<double>{9, 9});
  CHECK(std::isnan(a.finish().max_residual));
  CHECK_FALSE(a.finish().passed);
}

TEST_CASE("proposition") {
  SUBCASE("flat product") {
    const GalleryEntry e = flat_product(3);
    CHECK(check_proposition(e.pair, halton_points(e.pair.g.chart(), 20), 1e-10).passed);
  }
  SUBCASE("every gallery pair, 100 samples") {
    for (const auto& e : all_entries()) {
      const IdentityResult r = check_proposition(e.pair, halton_points(e.pair.g.chart(), 100));
      INFO(e.name << " " << r.max_residual);
      CHECK(r.samples == 100);
      CHECK(r.passed);
      CHECK(r.max_residual < 1e-8);
    }
  }
}

TEST_CASE("theorem equation (1)") {
  SUBCASE("de Sitter, lambda = 1/r^2") {
    for (double r : {1.0, 2.0}) {
      const GalleryEntry e = de_sitter(3, r);
      const auto [a, b] = check_theorem_eq1(e.pair, 1.0 / (r * r), halton_points(e.pair.g.chart(), 100));
      CHECK(a.name == "theorem-eq1-riemannian");
      CHECK(b.name == "theorem-eq1-lorentzian");
      CHECK(a.max_residual < 1e-8);
      CHECK(b.max_residual < 1e-8);
    }
  }
  SUBCASE("Example 2 with Ric_L = g_L") {
    // Ric_L = g_L in dimension 3 is sectional curvature 1/2.
    const GalleryEntry e = example2(2.0);
    const auto pts = halton_points(e.pair.g.chart(), 100);
    const auto [a, b] = check_theorem_eq1(e.pair, 0.5, pts);
    CHECK(a.max_residual < 1e-8);
    CHECK(b.max_residual < 1e-8);
    const auto [a1, b1] = check_theorem_eq1(e.pair, 1.0, pts);
    CHECK(a1.max_residual > 1e-3);
    CHECK(b1.max_residual > 1e-3);
  }
  SUBCASE("perturbed de Sitter fails on both sides") {
    const GalleryEntry e = perturbed_de_sitter(3, 1.0, 0.05);
    const auto [a, b] = check_theorem_eq1(e.pair, 1.0, halton_points(e.pair.g.chart(), 100));
    CHECK(a.max_residual > 1e-3);
    CHECK(b.max_residual > 1e-3);
  }
  SUBCASE("the two sides agree across the test set") {
    struct Case {
      GalleryEntry e;
      double lambda;
    };
    std::vector<Case> cases{{de_sitter(3, 1.0), 1.0},      {de_sitter(4, 2.0), 0.25},
                            {de_sitter(5, 1.0), 1.0},      {example2(2.0), 0.5},
                            {example2(3.0), 0.5},          {flat_product(3), 0.0},
                            {flat_product(4), 0.0},        {plane_wave(), 0.0},
                            {perturbed_de_sitter(3, 1.0, 0.05), 1.0},
                            {perturbed_de_sitter(4, 1.0, 0.05), 1.0},
                            {de_sitter(3, 1.0), 0.9},      {flat_product(3), 0.1}};
    for (const auto& c : cases) {
      const auto [a, b] = check_theorem_eq1(c.e.pair, c.lambda, halton_points(c.e.pair.g.chart(), 50), 1e-6);
      INFO(c.e.name << " lambda " << c.lambda << ": " << a.max_residual << " " << b.max_residual);
      CHECK(a.passed == b.passed);
    }
  }
  SUBCASE("in dimension two the residuals coincide") {
    for (const char* phi : {"cosh(t)", "exp(t/2)*(2+sin(x))", "1+t^2+x^2/4", "2+sin(3*t)*cos(x)"}) {
      const SiblingPair p = warped_2d(phi);
      for (double lambda : {-1.0, 0.0, 0.5, 1.0, 3.0}) {
        const auto [a, b] = check_theorem_eq1(p, lambda, halton_points(p.g.chart(), 30));
        INFO(phi << " " << lambda);
        CHECK(std::abs(a.raw_residual - b.raw_residual) <= 1e-12 * (1 + a.raw_residual));
      }
    }
    // cosh(t) is the two-dimensional de Sitter case
    const SiblingPair ds = warped_2d("cosh(t)");
    CHECK(check_theorem_eq1(ds, 1.0, halton_points(ds.g.chart(), 30)).first.passed);
  }
}

TEST_CASE("constant curvature fit") {
  SUBCASE("sphere of radius 2") {
    const MetricField m = sphere(2.0);
    const ConstantCurvatureFit f = fit_constant_curvature(m, halton_points(m.chart(), 50));
    CHECK(std::abs(f.lambda_hat - 0.25) < 1e-9);
    CHECK(f.residual < 1e-9);
    CHECK(f.samples == 50);
  }
  SUBCASE("de Sitter") {
    for (double r : {1.0, 2.0}) {
      const MetricField& gl = de_sitter(3, r).pair.gL;
      const ConstantCurvatureFit f = fit_constant_curvature(gl, halton_points(gl.chart(), 100));
      CHECK(std::abs(f.lambda_hat - 1.0 / (r * r)) < 1e-8);
    }
  }
  SUBCASE("plane wave is not a space form") {
    const MetricField& gl = plane_wave().pair.gL;
    const ConstantCurvatureFit f = fit_constant_curvature(gl, halton_points(gl.chart(), 100));
    CHECK(f.residual > 1e-2);
  }
  SUBCASE("flat") {
    const MetricField& g = flat_product(3).pair.g;
    const ConstantCurvatureFit f = fit_constant_curvature(g, halton_points(g.chart(), 10));
    CHECK(f.lambda_hat == 0.0);
    CHECK(f.residual == 0.0);
  }
}

TEST_CASE("Ricci relation") {
  SUBCASE("flat product") {
    const GalleryEntry e = flat_product(3);
    const IdentityResult r = check_ricci_relation(e.pair, halton_points(e.pair.g.chart(), 10));
    CHECK(r.max_residual == 0.0);
  }
  SUBCASE("gallery") {
    for (const auto& e : all_entries()) {
      const IdentityResult r = check_ricci_relation(e.pair, halton_points(e.pair.g.chart(), 100));
      INFO(e.name << " " << r.max_residual);
      CHECK(r.passed);
    }
  }
  SUBCASE("de Sitter Ric(T,T) = -(n-1)") {
    for (int n : {3, 4, 5}) {
      const GalleryEntry e = de_sitter(n, 1.0);
      for (const auto& p : halton_points(e.pair.g.chart(), 30)) {
        const Vec t = e.pair.T.eval(p);
        CHECK(std::abs(riemann_at(e.pair.g, p).ricci.apply(t, t) + (n - 1)) < 1e-10);
        CHECK(std::abs(riemann_at(e.pair.gL, p).ricci.apply(t, t) + (n - 1)) < 1e-10);
      }
    }
  }
  SUBCASE("plane wave Ric = Ric_L") {
    const GalleryEntry e = plane_wave();
    for (const auto& p : halton_points(e.pair.g.chart(), 100))
      CHECK(max_abs_diff(riemann_at(e.pair.g, p).ricci, riemann_at(e.pair.gL, p).ricci) < 1e-8);
  }
}

TEST_CASE("Remark 3: Ricci of de Sitter's Riemannian sibling") {
  // Ric(X_i, X_i) = (n-3) - 2(n-2) tanh^2 t, with kappa = -tanh t.
  for (int n : {3, 4, 5, 6}) {
    const GalleryEntry e = de_sitter(n, 1.0);
    for (const auto& p : halton_points(e.pair.g.chart(), 30)) {
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
      const SymBilinear ric = riemann_at(e.pair.g, p).ricci;
      const double th = std::tanh(p[0]);
      for (std::size_t i = 0; i < s.eigenframe.size(); ++i) {
        const double v = ric.apply(s.eigenframe[i], s.eigenframe[i]);
        CHECK(std::abs(v - ((n - 3) - 2.0 * (n - 2) * th * th)) < 1e-10);
        // general component formula of the remark
        double others = 0.0;
        for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
          if (k != i) others += s.eigenvalues[k];
        CHECK(std::abs(v - (-1.0 + (n - 2) - 2 * s.eigenvalues[i] * others)) < 1e-10);
      }
    }
  }
  SUBCASE("sign witness") {
    for (int n : {4, 5}) {
      const GalleryEntry e = de_sitter(n, 1.0);
      for (const auto& p : halton_points(e.pair.g.chart(), 30)) {
        const Vec t = e.pair.T.eval(p);
        CHECK(riemann_at(e.pair.g, p).ricci.apply(t, t) < 0.0);
      }
      Vec p0(static_cast<std::size_t>(n), 1.3);
      p0[0] = 0.0;
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p0);
      const double v = riemann_at(e.pair.g, p0).ricci.apply(s.eigenframe[0], s.eigenframe[0]);
      CHECK(v > 0.0);
      CHECK(std::abs(v - (n - 3)) < 1e-12);
    }
  }
}

TEST_CASE("connection relations on the gallery") {
  for (const auto& e : all_entries()) {
    INFO(e.name);
    CHECK(check_connection(e.pair, halton_points(e.pair.g.chart(), 20)).passed);
  }
}

TEST_CASE("Remark 1 sectional curvatures") {
  SUBCASE("de Sitter") {
    const GalleryEntry e = de_sitter(4, 1.0);
    const auto pts = halton_points(e.pair.g.chart(), 30);
    CHECK(check_remark1_sectionals(e.pair, 1.0, pts).passed);
    for (const auto& p : pts) {
      const PointGeometry pg = riemann_at(e.pair.g, p);
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
      const double th = std::tanh(p[0]);
      CHECK(std::abs(sectional(pg, s.T, s.eigenframe[0]) + 1.0) < 1e-8);
      CHECK(std::abs(sectional(pg, s.eigenframe[0], s.eigenframe[1]) - (1 - 2 * th * th)) < 1e-8);
    }
  }
  SUBCASE("flat product") {
    const GalleryEntry e = flat_product(4);
    const IdentityResult r = check_remark1_sectionals(e.pair, 0.0, halton_points(e.pair.g.chart(), 10));
    CHECK(r.max_residual == 0.0);
  }
  SUBCASE("Example 2") {
    const GalleryEntry e = example2(2.0);
    CHECK(check_remark1_sectionals(e.pair, 0.5, halton_points(e.pair.g.chart(), 30)).passed);
  }
}

TEST_CASE("Bochner formula") {
  SUBCASE("flat product: equality") {
    const GalleryEntry e = flat_product(3);
    const BochnerResult b = check_bochner(e.pair, halton_points(e.pair.g.chart(), 3));
    CHECK(b.identity.max_residual == 0.0);
    CHECK(b.min_gap == 0.0);
    CHECK(b.max_gap == 0.0);
  }
  SUBCASE("de Sitter") {
    const GalleryEntry e = de_sitter(3, 1.0);
    const auto starts = halton_points(e.pair.g.chart(), 5);
    const BochnerResult b = check_bochner(e.pair, starts);
    CHECK(b.points >= 25);
    CHECK(b.identity.max_residual < 1e-6);
    CHECK(b.inequality.passed);
    CHECK(std::abs(b.min_gap) < 1e-6);
    CHECK(std::abs(b.max_gap) < 1e-6);
    // analytic: T(div T) = (n-1) sech^2 t along T = -d/dt
    for (const auto& p : starts) {
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
      double sumsq = 0;
      for (double l : s.eigenvalues) sumsq += l * l;
      const double ric = riemann_at(e.pair.g, p).ricci.apply(s.T, s.T);
      const double ch = std::cosh(p[0]);
      CHECK(std::abs(2.0 / (ch * ch) - (-ric - sumsq)) < 1e-10);
    }
  }
  SUBCASE("plane wave: strict inequality") {
    const GalleryEntry e = plane_wave();
    const BochnerResult b = check_bochner(e.pair, halton_points(e.pair.g.chart(), 5));
    CHECK(b.identity.max_residual < 1e-6);
    CHECK(b.inequality.passed);
    CHECK(b.min_gap > 0.1);
  }
  SUBCASE("options are validated") {
    const GalleryEntry e = flat_product(3);
    BochnerOptions o;
    o.fd_step = 0.0;
    CHECK_THROWS_AS(check_bochner(e.pair, halton_points(e.pair.g.chart(), 1), o), BadParameters);
  }
}

TEST_CASE("Riccati solutions") {
  const auto s = grid(-5.0, 5.0, 0.01);
  CHECK(riccati_residual(3, 1.0, 0.0, s) < 1e-12);
  CHECK(riccati_residual(4, 2.0, 1.0, s) < 1e-12);
  CHECK(riccati_residual(5, 0.3, -2.0, s) < 1e-12);
  for (double sign : {-1.0, 1.0}) {
    CHECK(riccati_constant_residual(3, 1.0, sign, s) == 0.0);
    CHECK(riccati_constant_residual(4, 2.0, sign, s) < 1e-14);  // sqrt(2)^2 rounds
  }
  const double wrong = riccati_residual(
      3, 1.0, [](double x) { return std::tanh(x); },
      [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }, s);
  CHECK(wrong >= 0.5);
  const std::vector<double> zero{0.0};
  CHECK(riccati_residual(
            3, 1.0, [](double x) { return std::tanh(x); },
            [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); }, zero) == 1.0);
  CHECK_THROWS_AS(riccati_residual(3, 0.0, 0.0, s), BadParameters);
  CHECK_THROWS_AS(riccati_residual(1, 1.0, 0.0, s), BadParameters);
}

TEST_CASE("Bakry-Emery tensor") {
  SUBCASE("plane wave vanishes") {
    const GalleryEntry e = plane_wave();
    const IdentityResult r = check_bakry_emery(e.pair.gL, *e.potential, halton_points(e.pair.gL.chart(), 100));
    CHECK(r.passed);
    CHECK(r.max_residual < 1e-8);
  }
  SUBCASE("H = x^2 does not") {
    const MetricField gl = pp_lorentzian("x^2");
    const IdentityResult r = check_bakry_emery(gl, gl.chart().parse("u"), halton_points(gl.chart(), 50));
    CHECK(r.max_residual > 1e-3);
  }
  SUBCASE("Minkowski with u = t") {
    const Chart c = box_chart({"t", "x", "y", "z"}, -1, 1);
    const MetricField m = diag_metric(c, {"-1", "1", "1", "1"}, Signature::Lorentzian);
    const IdentityResult r = check_bakry_emery(m, c.parse("t"), halton_points(c, 10));
    CHECK(r.max_residual == 2.0);
    CHECK_FALSE(r.passed);
  }
  SUBCASE("synthetic dimension") {
    const Chart c = box_chart({"t", "x", "y", "z"}, -1, 1);
    const MetricField m = diag_metric(c, {"-1", "1", "1", "1"}, Signature::Lorentzian);
    CHECK_THROWS_AS(check_bakry_emery(m, c.parse("t"), halton_points(c, 1), 4.0), BadParameters);
  }
}

TEST_CASE("pp-wave compatibility conditions") {
  const Chart& c = pp_wave_chart();
  const auto pts = halton_points(c, 50);
  SUBCASE("plane wave: exactly zero") {
    const Big3Residuals r = check_big3(c.parse("y"), c.parse("x"), c.parse("x^2+y^2"), pts);
    CHECK(r.integrability == 0.0);
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.0);
    CHECK(r.result.passed);
  }
  SUBCASE("H = f^2 + h^2 recipe") {
    const Big3Residuals r = check_big3(c.parse("y^2"), c.parse("2*x*y"), c.parse("y^4+4*x^2*y^2"), pts);
    CHECK(r.result.max_residual < 1e-12);
  }
  SUBCASE("H = x^2 breaks the last condition") {
    const Big3Residuals r = check_big3(c.parse("y"), c.parse("x"), c.parse("x^2"), pts);
    CHECK(r.integrability == 0.0);
    CHECK(r.first == 0.0);
    CHECK(r.second > 0.1);
    CHECK_FALSE(r.result.passed);
    CHECK_THROWS_AS(pp_wave(c.parse("y"), c.parse("x"), c.parse("x^2")), Big3Violated);
  }
  SUBCASE("u-dependent profile") {
    // f = y cos u, h = x cos u: h_x = f_y; H from the two transport equations.
    const Big3Residuals r =
        check_big3(c.parse("y*cos(u)"), c.parse("x*cos(u)"), c.parse("(x^2+y^2)*cos(u)^2 + 2*x*y*sin(u)"), pts);
    CHECK(r.result.max_residual < 1e-12);
  }
  CHECK_THROWS_AS(check_big3(c.parse("v"), c.parse("x"), c.parse("x^2"), pts), BadParameters);
}
