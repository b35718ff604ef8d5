#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sibgeo/linalg.hpp"

using namespace sibgeo;
using namespace testing_helpers;

namespace {

const Chart& flat3_chart() {
  static const Chart c = box_chart({"x1", "x2", "x3"}, -1.5, 1.5);
  return c;
}

MetricField flat3() { return diag_metric(flat3_chart(), {"1", "1", "1"}, Signature::Riemannian); }

// Three unit fields on flat space, each breaking a different property.
VectorFieldSpec not_geodesic() { return field(flat3_chart(), {"cos(x2)", "sin(x2)", "0"}); }
VectorFieldSpec not_integrable() { return field(flat3_chart(), {"cos(x3)", "sin(x3)", "0"}); }
VectorFieldSpec neither() { return field(flat3_chart(), {"cos(x2+x3)", "sin(x2+x3)", "0"}); }

Matrix random_rotation(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix q(n);
  for (int j = 0; j < n; ++j) {
    Vec c(static_cast<std::size_t>(n));
    for (double& x : c) x = u(rng);
    for (int k = 0; k < j; ++k) {
      double d = 0;
      for (int i = 0; i < n; ++i) d += c[static_cast<std::size_t>(i)] * q(i, k);
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] -= d * q(i, k);
    }
    double nn = 0;
    for (double x : c) nn += x * x;
    nn = std::sqrt(nn);
    for (int i = 0; i < n; ++i) q(i, j) = c[static_cast<std::size_t>(i)] / nn;
  }
  return q;
}

// Orthogonal projector onto the eigenspace of `value` in coordinates.
Matrix eigenspace_projector(const ShapeSpectrum& s, const SymBilinear& g, double value) {
  const int n = static_cast<int>(s.T.size());
  Matrix p(n);
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    if (std::abs(s.eigenvalues[k] - value) > 1e-6) continue;
    const Vec& x = s.eigenframe[k];
    const Vec xf = g.lower(x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += x[static_cast<std::size_t>(i)] * xf[static_cast<std::size_t>(j)];
  }
  return p;
}

}  // namespace

TEST_CASE("sibling_metric examples") {
  SUBCASE("Euclidean with a coordinate field") {
    const MetricField gl = sibling_metric(flat3(), field(flat3_chart(), {"1", "0", "0"}));
    CHECK(gl.signature() == Signature::Lorentzian);
    const SymBilinear v = gl.eval(std::vector<double>{0.2, 0.3, 0.4});
    const std::vector<double> want{-1, 1, 1};
    CHECK(max_abs_diff(v, SymBilinear::diagonal(want)) == 0.0);
  }
  SUBCASE("de Sitter from its Riemannian sibling") {
    const GalleryEntry e = de_sitter(4, 1.5);
    const MetricField back = sibling_metric(e.pair.g, e.pair.T);
    for (const auto& p : halton_points(e.pair.g.chart(), 50)) {
      CHECK(max_abs_diff(back.eval(p), e.pair.gL.eval(p)) < 1e-12);
      CHECK(e.pair.g.eval(p)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("involution") {
    for (const auto& e : all_entries()) {
      const MetricField gl = sibling_metric(e.pair.g, e.pair.T);
      const MetricField g2 = sibling_metric(gl, e.pair.T);
      CHECK(g2.signature() == Signature::Riemannian);
      for (const auto& p : halton_points(e.pair.g.chart(), 30)) {
        const SymBilinear a = e.pair.g.eval(p);
        INFO(e.name);
        CHECK(max_abs_diff(g2.eval(p), a) < 1e-12 * (1 + a.max_abs()));
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sibling_metric(flat3(), field(flat3_chart(), {"2", "0", "0"})), NotUnit);
    CHECK_THROWS_AS(sibling_metric(flat3(), field(flat3_chart(), {"1", "x1/10", "0"})), NotUnit);
    try {
      sibling_metric(flat3(), field(flat3_chart(), {"1+x1^2", "0", "0"}));
      FAIL("expected NotUnit");
    } catch (const NotUnit& e) {
      CHECK(std::string(e.what()).find("g(T,T)") != std::string::npos);
    }
    const MetricField bad = diag_metric(flat3_chart(), {"-1", "1", "1"}, Signature::Riemannian);
    CHECK_THROWS_AS(sibling_metric(bad, field(flat3_chart(), {"0", "1", "0"})), SignatureError);
  }
}

TEST_CASE("gallery pairs satisfy the pair invariants") {
  for (const auto& e : all_entries()) {
    const auto pts = halton_points(e.pair.g.chart(), 50);
    const SiblingPairResiduals r = check_sibling_pair(e.pair, pts);
    INFO(e.name);
    CHECK(r.transform < 1e-12);
    CHECK(r.unit_g < 1e-10);
    CHECK(r.unit_gL < 1e-10);
  }
}

TEST_CASE("T properties on the gallery") {
  for (const auto& e : all_entries()) {
    const TFieldReport r = verify_T_properties(e.pair.g, e.pair.T, halton_points(e.pair.g.chart(), 50));
    INFO(e.name);
    CHECK(r.samples == 50);
    CHECK(r.passes(1e-9));
  }
  CHECK_THROWS_AS(verify_T_properties(de_sitter(3, 1.0).pair.gL, de_sitter(3, 1.0).pair.T,
                                      halton_points(de_sitter(3, 1.0).pair.g.chart(), 2)),
                  SignatureError);
}

TEST_CASE("broken fields fail exactly the property they break") {
  const auto pts = halton_points(flat3_chart(), 50);
  SUBCASE("unit but not geodesic") {
    const TFieldReport r = verify_T_properties(flat3(), not_geodesic(), pts);
    CHECK(r.unit_residual < 1e-12);
    CHECK(r.geodesic_residual > 0.1);
    CHECK(r.integrability_residual < 1e-12);
    CHECK(r.symmetry_residual > 0.1);
  }
  SUBCASE("geodesic but not integrable") {
    const TFieldReport r = verify_T_properties(flat3(), not_integrable(), pts);
    CHECK(r.unit_residual < 1e-12);
    CHECK(r.geodesic_residual < 1e-12);
    CHECK(r.integrability_residual > 0.1);
    CHECK(r.symmetry_residual > 1e-3);
  }
  SUBCASE("neither") {
    const TFieldReport r = verify_T_properties(flat3(), neither(), pts);
    CHECK(r.geodesic_residual > 0.1);
    CHECK(r.integrability_residual > 0.1);
    CHECK(r.symmetry_residual > 1e-3);
  }
  CHECK_THROWS_AS(nabla_T_flat(flat3(), neither(), std::vector<double>{0.3, 0.4, 0.5}), NotSymmetric);
  CHECK_THROWS_AS(shape_spectrum(flat3(), not_integrable(), std::vector<double>{0.3, 0.4, 0.5}), NotSymmetric);
}

TEST_CASE("property: symmetry of nabla T_flat is equivalent to the two T properties") {
  std::vector<std::pair<MetricField, VectorFieldSpec>> cases;
  for (const auto& e : all_entries()) cases.emplace_back(e.pair.g, e.pair.T);
  cases.emplace_back(flat3(), not_geodesic());
  cases.emplace_back(flat3(), not_integrable());
  cases.emplace_back(flat3(), neither());
  const double C = 20.0, floor = 1e-10;
  for (const auto& [g, T] : cases)
    for (const auto& p : halton_points(g.chart(), 40)) {
      const std::vector<Vec> one{p};
      const TFieldReport r = verify_T_properties(g, T, one);
      const double props = r.geodesic_residual + r.integrability_residual;
      CHECK(r.symmetry_residual <= C * props + floor);
      CHECK(props <= C * r.symmetry_residual + floor);
    }
}

TEST_CASE("shape spectrum") {
  SUBCASE("parallel field") {
    const GalleryEntry e = flat_product(4);
    const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, std::vector<double>{0.1, 0.2, 0.3, 0.4});
    REQUIRE(s.eigenvalues.size() == 3);
    for (double v : s.eigenvalues) CHECK(v == 0.0);
  }
  SUBCASE("plane wave has +1 and -1") {
    const GalleryEntry e = plane_wave();
    for (const auto& p : halton_points(e.pair.g.chart(), 20)) {
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
      REQUIRE(s.eigenvalues.size() == 3);
      CHECK(std::abs(s.eigenvalues.front() - 1.0) < 1e-9);
      CHECK(std::abs(s.eigenvalues.back() + 1.0) < 1e-9);
      CHECK(std::abs(s.eigenvalues[1]) < 1e-9);
    }
  }
  SUBCASE("eigenframe invariants") {
    for (const auto& e : all_entries()) {
      for (const auto& p : halton_points(e.pair.g.chart(), 10)) {
        const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
        const SymBilinear g = e.pair.g.eval(p), gl = e.pair.gL.eval(p);
        const Christoffel G = christoffel(e.pair.g, p);
        const auto Tj = e.pair.T.eval_jet(p);
        INFO(e.name);
        CHECK(std::abs(gl.apply(s.T, s.T) + 1.0) < 1e-10);
        for (std::size_t i = 0; i < s.eigenframe.size(); ++i) {
          const Vec& xi = s.eigenframe[i];
          CHECK(std::abs(g.apply(xi, s.T)) < 1e-10);
          CHECK(std::abs(gl.apply(xi, s.T)) < 1e-10);
          for (std::size_t j = 0; j < s.eigenframe.size(); ++j) {
            const double want = i == j ? 1.0 : 0.0;
            CHECK(std::abs(g.apply(xi, s.eigenframe[j]) - want) < 1e-10);
            CHECK(std::abs(gl.apply(xi, s.eigenframe[j]) - want) < 1e-10);
          }
          // D X_i = lambda_i X_i
          const Vec dx = covariant_derivative(G, xi, Tj);
          double worst = 0.0;
          for (std::size_t k = 0; k < dx.size(); ++k) worst = std::max(worst, std::abs(dx[k] - s.eigenvalues[i] * xi[k]));
          CHECK(worst < 1e-9 * (1 + std::abs(s.eigenvalues[i])));
        }
      }
    }
  }
  SUBCASE("frame independence") {
    std::mt19937_64 rng(17);
    for (const auto& e : all_entries()) {
      const int n = e.pair.g.dim();
      for (const auto& p : halton_points(e.pair.g.chart(), 10)) {
        const ShapeSpectrum a = shape_spectrum(e.pair.g, e.pair.T, p);
        const Matrix q = random_rotation(rng, n);
        const ShapeSpectrum b = shape_spectrum(e.pair.g, e.pair.T, p, &q);
        for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-9);
        // Eigenspaces, not eigenvectors, are frame independent.
        const SymBilinear g = e.pair.g.eval(p);
        for (double v : a.eigenvalues) {
          const Matrix pa = eigenspace_projector(a, g, v), pb = eigenspace_projector(b, g, v);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(std::abs(pa(i, j) - pb(i, j)) < 1e-8 * (1 + std::abs(pa(i, j))));
        }
      }
    }
  }
}

TEST_CASE("de Sitter: umbilic with kappa = -tanh t") {
  // Two candidate values for the common eigenvalue; the computation has to
  // match exactly one of them everywhere.
  for (int n : {3, 4, 5}) {
    const GalleryEntry e = de_sitter(n, 1.0);
    int match_tanh = 0, match_2tanh = 0, total = 0;
    for (int k = 0; k <= 40; ++k) {
      const double t = -2.0 + 0.1 * k;
      Vec p(static_cast<std::size_t>(n), 1.2);
      p[0] = t;
      const ShapeSpectrum s = shape_spectrum(e.pair.g, e.pair.T, p);
      REQUIRE(s.eigenvalues.size() == static_cast<std::size_t>(n - 1));
      bool all1 = true, all2 = true;
      for (double v : s.eigenvalues) {
        all1 = all1 && std::abs(v - (-std::tanh(t))) < 1e-8;
        all2 = all2 && std::abs(v - (-2 * std::tanh(t))) < 1e-8;
      }
      match_tanh += all1;
      match_2tanh += all2;
      ++total;
    }
    CHECK(match_tanh == total);
    CHECK(match_2tanh == 1);  // only t = 0, where both vanish
  }
  // frozen values at t = 1
  const ShapeSpectrum s = shape_spectrum(de_sitter(3, 1.0).pair.g, de_sitter(3, 1.0).pair.T, std::vector<double>{1.0, 1.0, 1.0});
  for (double v : s.eigenvalues) CHECK(std::abs(v - (-0.7615941559557649)) < 1e-12);
  const ShapeSpectrum z = shape_spectrum(de_sitter(3, 1.0).pair.g, de_sitter(3, 1.0).pair.T, std::vector<double>{0.0, 1.0, 1.0});
  for (double v : z.eigenvalues) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("nabla T_flat") {
  SUBCASE("parallel field on flat space") {
    const GalleryEntry e = flat_product(3);
    CHECK(nabla_T_flat(e.pair.g, e.pair.T, std::vector<double>{0.1, 0.2, 0.3}).max_abs() == 0.0);
  }
  SUBCASE("de Sitter umbilic form") {
    const GalleryEntry e = de_sitter(4, 1.0);
    for (const auto& p : halton_points(e.pair.g.chart(), 30)) {
      const SymBilinear g = e.pair.g.eval(p);
      const Vec tf = g.lower(e.pair.T.eval(p));
      const SymBilinear want = (-std::tanh(p[0])) * (g - SymBilinear::outer(tf));
      CHECK(max_abs_diff(nabla_T_flat(e.pair.g, e.pair.T, p), want) < 1e-12 * (1 + want.max_abs()));
    }
  }
  SUBCASE("Example 2 is symmetric") {
    const GalleryEntry e = example2(2.0);
    for (const auto& p : halton_points(e.pair.g.chart(), 100))
      CHECK(nabla_T_flat_matrix(e.pair.g, e.pair.T, p).asymmetry() < 1e-10);
  }
  SUBCASE("T row vanishes") {
    for (const auto& e : all_entries())
      for (const auto& p : halton_points(e.pair.g.chart(), 10)) {
        const SymBilinear d = nabla_T_flat(e.pair.g, e.pair.T, p);
        const Vec row = d.lower(e.pair.T.eval(p));
        for (double x : row) CHECK(std::abs(x) < 1e-9 * (1 + d.max_abs()));
      }
  }
}

TEST_CASE("g and g_L agree on the normal space") {
  for (const auto& e : all_entries())
    for (const auto& p : halton_points(e.pair.g.chart(), 20)) {
      const auto frame = normal_frame(e.pair.g, e.pair.T, p);
      REQUIRE(frame.size() == static_cast<std::size_t>(e.pair.g.dim() - 1));
      const SymBilinear g = e.pair.g.eval(p), gl = e.pair.gL.eval(p);
      for (const auto& a : frame)
        for (const auto& b : frame) {
          INFO(e.name);
          CHECK(std::abs(g.apply(a, b) - gl.apply(a, b)) < 1e-12 * (1 + g.max_abs()));
        }
    }
}

TEST_CASE("connection relations") {
  SUBCASE("flat product") {
    const GalleryEntry e = flat_product(3);
    CHECK(check_connection_relations(e.pair, std::vector<double>{0.5, -0.2, 0.7}).max() < 1e-10);
  }
  SUBCASE("de Sitter at t = 0.5") {
    const GalleryEntry e = de_sitter(3, 1.0);
    const ConnectionResiduals r = check_connection_relations(e.pair, std::vector<double>{0.5, 1.1, 2.0});
    CHECK(r.tt < 1e-7);
    CHECK(r.xt < 1e-7);
    CHECK(r.tx < 1e-7);
    CHECK(r.xx < 1e-7);
  }
  SUBCASE("whole gallery") {
    for (const auto& e : all_entries())
      for (const auto& p : halton_points(e.pair.g.chart(), 10)) {
        INFO(e.name);
        CHECK(check_connection_relations(e.pair, p).max() < 1e-7);
      }
  }
}
