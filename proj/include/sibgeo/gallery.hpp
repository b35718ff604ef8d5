#pragma once

// Closed-form sibling pairs with known answers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sibgeo/sibling.hpp"

namespace sibgeo {

struct PpWaveProfile {
  Expr f, h, H;
};

struct GalleryEntry {
  std::string name;
  std::map<std::string, double> parameters;
  SiblingPair pair;
  std::vector<std::string> expected;  // identity names expected to pass
  std::optional<double> lambda;       // constant curvature of g_L, when known
  std::optional<PpWaveProfile> pp;
  std::optional<Expr> potential;      // u for the Bakry-Emery check
};

// Chart (v, u, x, y) on [-1.5, 1.5]^4.
const Chart& pp_wave_chart();

// n in 3..6, r > 0. Chart (t, th1, ..., th{n-1}); T = -d/dt.
GalleryEntry de_sitter(int n, double r);

// de Sitter with g_tt perturbed to 1 + eps t^2 and T renormalized. T keeps its
// properties but g_L is no longer of constant curvature.
GalleryEntry perturbed_de_sitter(int n, double r, double eps);

// Three-dimensional pair on x1 > -a with Ric_L = g_L (sectional curvature 1/2).
GalleryEntry example2(double a);

// Throws Big3Violated when (f, h, H) fail the compatibility conditions.
GalleryEntry pp_wave(const Expr& f, const Expr& h, const Expr& H);

// f = y, h = x, H = x^2 + y^2, with u as Bakry-Emery potential.
GalleryEntry plane_wave();

// Flat R^n with T = d/dt.
GalleryEntry flat_product(int n);

std::vector<std::string> gallery_names();

struct GalleryParameters {
  std::vector<std::string> numbers;
  std::vector<std::string> expressions;
};

// Accepted parameter keys; throws BadParameters for unknown names.
GalleryParameters gallery_parameters(const std::string& name);

// Builds a named entry. Numeric parameters: de-sitter {n, r, perturbation},
// example2 {a}, flat-product {n}. Expression parameters: pp-wave {f, h, H}.
// Throws BadParameters for unknown names or keys.
GalleryEntry gallery_entry(const std::string& name, const std::map<std::string, double>& numbers = {},
                           const std::map<std::string, std::string>& expressions = {});

}  // namespace sibgeo
