#pragma once

// Run configuration, orchestration of the verification suite, and reports.
//
// Configs and reports are JSON; the grammar is documented in docs/config.md.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sibgeo/gallery.hpp"
#include "sibgeo/identities.hpp"

namespace sibgeo {

enum class SampleStrategy { Halton, Grid };

struct SampleSpec {
  SampleStrategy strategy = SampleStrategy::Halton;
  int count = 100;
};

// A sibling pair written out by hand.
struct InlineSource {
  std::vector<std::string> coordinates;
  std::vector<Interval> box;
  std::vector<Interval> domain;               // empty: unbounded
  std::vector<std::vector<std::string>> metric;
  std::vector<std::string> T;
  Signature signature = Signature::Riemannian;  // signature of `metric`
  std::optional<std::string> potential;         // Bakry-Emery potential
  std::optional<std::string> f, h, H;           // pp-wave profile, for big3
};

struct RunConfig {
  std::string gallery;  // empty for an inline source
  std::map<std::string, double> parameters;
  std::map<std::string, std::string> expressions;
  std::optional<InlineSource> inline_source;

  SampleSpec samples;
  double tolerance = kDefaultTolerance;
  std::vector<std::string> checks;  // empty: every applicable check
  std::optional<double> lambda;
  double synthetic_dimension = 3.5;
  int bochner_curves = 5;
};

// Check names in report order. "theorem-eq1" yields two records.
const std::vector<std::string>& check_names();

// Parses and validates a JSON config. Expressions are parsed eagerly, so a
// SyntaxError carries the offset into the offending string. Throws
// ConfigError naming the field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);  // IoError when unreadable

// Default config for a gallery entry.
RunConfig gallery_config(const std::string& name);

// Accepts a config path or, when no such file exists, a gallery name.
RunConfig resolve_config(const std::string& path_or_name);

std::string config_to_json(const RunConfig& config);

// Builds the sibling pair described by the config (and the gallery metadata
// that goes with it).
GalleryEntry build_entry(const RunConfig& config);

struct CheckRecord {
  IdentityResult result;
  std::map<std::string, double> details;
  double wall_time = 0.0;  // seconds
};

struct VerificationReport {
  std::string config_json;  // normalized echo
  std::vector<CheckRecord> checks;
  bool passed = false;

  // 0 when passed, else the 1-based position of the first failing record.
  int exit_code() const;
};

// Never throws for module errors: they become failed records carrying the
// error kind and message.
VerificationReport run(const RunConfig& config);

std::string report_to_json(const VerificationReport& report, bool include_timing = true);
VerificationReport report_from_json(const std::string& json_text);

// Aligned table for the terminal; no timing, so it is deterministic.
std::string report_to_text(const VerificationReport& report);

// Curvature data of both siblings at a point, as JSON.
std::string curvature_json(const GalleryEntry& entry, std::span<const double> point);

// s, coordinates, velocity, speed; tab-separated, one line per state.
std::string trajectory_text(const Trajectory& trajectory);

}  // namespace sibgeo
