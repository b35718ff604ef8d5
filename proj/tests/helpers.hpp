#pragma once

#include <string>
#include <vector>

#include "sibgeo/gallery.hpp"
#include "sibgeo/sampling.hpp"

namespace testing_helpers {

using namespace sibgeo;

inline MetricField metric(const Chart& chart, const std::vector<std::vector<std::string>>& src, Signature sig) {
  std::vector<std::vector<Expr>> comps;
  for (const auto& row : src) {
    std::vector<Expr> r;
    for (const auto& s : row) r.push_back(chart.parse(s));
    comps.push_back(r);
  }
  return MetricField(chart, comps, sig);
}

inline MetricField diag_metric(const Chart& chart, const std::vector<std::string>& d, Signature sig) {
  const auto n = d.size();
  std::vector<std::vector<std::string>> src(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) src[i][i] = d[i];
  return metric(chart, src, sig);
}

inline VectorFieldSpec field(const Chart& chart, const std::vector<std::string>& src) {
  std::vector<Expr> c;
  for (const auto& s : src) c.push_back(chart.parse(s));
  return VectorFieldSpec(chart, c);
}

inline Chart box_chart(std::vector<std::string> names, double lo, double hi) {
  const auto n = names.size();
  return Chart(std::move(names), std::vector<Interval>(n, Interval{lo, hi}));
}

// Round 2-sphere of radius r in (theta, phi), away from the poles.
inline MetricField sphere(double r) {
  const Chart c({"th", "ph"}, {Interval{0.2, 3.141592653589793 - 0.2}, Interval{-50, 50}},
                {Interval{0.0, 3.141592653589793}, Interval{}});
  const std::string r2 = format_double(r * r);
  return diag_metric(c, {r2, r2 + "*sin(th)^2"}, Signature::Riemannian);
}

// Every gallery entry at its default parameters plus a few variants.
inline std::vector<GalleryEntry> all_entries() {
  return {de_sitter(3, 1.0), de_sitter(4, 2.0), perturbed_de_sitter(3, 1.0, 0.05), example2(2.0),
          plane_wave(), gallery_entry("pp-wave"), flat_product(3)};
}

}  // namespace testing_helpers
