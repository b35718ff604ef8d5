#include "sibgeo/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sibgeo/sampling.hpp"

namespace sibgeo {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kBochnerPointsPerCurve = 10;
constexpr double kBochnerToleranceFactor = 100.0;

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

[[noreturn]] void config_error(const std::string& field, const std::string& reason) {
  throw ConfigError(field + ": " + reason);
}

void require_keys(const json& obj, const std::string& field, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* a) { return k == a; }) == keys.end())
      config_error(field.empty() ? k : field + "." + k, "unknown key");
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) config_error(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(field, "must be finite");
  return d;
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) config_error(field, "expected an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) config_error(field, "expected a string");
  return v.get<std::string>();
}

// Expression entries may be written as strings or plain numbers.
std::string expression_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_double(number(v, field));
  config_error(field, "expected an expression string or a number");
}

Expr parse_field(const std::string& source, const std::vector<std::string>& names, const std::string& field) {
  try {
    return parse(source, names);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.offset(), field + ": " + e.detail());
  } catch (const Error& e) {
    config_error(field, e.what());
  }
}

std::vector<Interval> intervals(const json& v, const std::string& field) {
  if (!v.is_array()) config_error(field, "expected an array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const json& p = v[i];
    if (!p.is_array() || p.size() != 2) config_error(f, "expected [lo, hi]");
    auto bound = [&](const json& b, const char* which) {
      if (b.is_null()) return std::string(which) == "lo" ? -std::numeric_limits<double>::infinity()
                                                         : std::numeric_limits<double>::infinity();
      if (!b.is_number()) config_error(f, "bounds must be numbers or null");
      return b.get<double>();
    };
    out.push_back({bound(p[0], "lo"), bound(p[1], "hi")});
  }
  return out;
}

Signature parse_signature(const std::string& s, const std::string& field) {
  if (s == "riemannian") return Signature::Riemannian;
  if (s == "lorentzian") return Signature::Lorentzian;
  config_error(field, "expected \"riemannian\" or \"lorentzian\"");
}

std::string signature_name(Signature s) { return s == Signature::Riemannian ? "riemannian" : "lorentzian"; }

InlineSource parse_inline(const json& src) {
  require_keys(src, "source", {"coordinates", "box", "domain", "metric", "T", "signature", "potential", "f", "h", "H"});
  for (const char* k : {"coordinates", "box", "metric", "T", "signature"})
    if (!src.contains(k)) config_error(std::string("source.") + k, "missing");

  InlineSource s;
  const json& coords = src["coordinates"];
  if (!coords.is_array()) config_error("source.coordinates", "expected an array of names");
  for (std::size_t i = 0; i < coords.size(); ++i)
    s.coordinates.push_back(text(coords[i], "source.coordinates[" + std::to_string(i) + "]"));
  const int n = static_cast<int>(s.coordinates.size());

  s.box = intervals(src["box"], "source.box");
  if (src.contains("domain")) s.domain = intervals(src["domain"], "source.domain");
  try {
    Chart check(s.coordinates, s.box, s.domain);
  } catch (const Error& e) {
    config_error("source.box", e.what());
  }

  const json& m = src["metric"];
  if (!m.is_array() || static_cast<int>(m.size()) != n) config_error("source.metric", "expected an n x n matrix");
  s.metric.assign(uz(n), std::vector<std::string>(uz(n)));
  std::vector<std::vector<Expr>> parsed(uz(n), std::vector<Expr>(uz(n)));
  for (int i = 0; i < n; ++i) {
    const json& row = m[uz(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) config_error("source.metric", "expected an n x n matrix");
    for (int j = 0; j < n; ++j) {
      const std::string f = "source.metric[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      s.metric[uz(i)][uz(j)] = expression_text(row[uz(j)], f);
      parsed[uz(i)][uz(j)] = parse_field(s.metric[uz(i)][uz(j)], s.coordinates, f);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(parsed[uz(i)][uz(j)] == parsed[uz(j)][uz(i)]))
        config_error("source.metric", "entries [" + std::to_string(i) + "][" + std::to_string(j) + "] and [" +
                                          std::to_string(j) + "][" + std::to_string(i) + "] differ");

  const json& t = src["T"];
  if (!t.is_array() || static_cast<int>(t.size()) != n) config_error("source.T", "expected n components");
  for (int i = 0; i < n; ++i) {
    const std::string f = "source.T[" + std::to_string(i) + "]";
    s.T.push_back(expression_text(t[uz(i)], f));
    parse_field(s.T.back(), s.coordinates, f);
  }
  s.signature = parse_signature(text(src["signature"], "source.signature"), "source.signature");

  auto optional_expr = [&](const char* key) -> std::optional<std::string> {
    if (!src.contains(key)) return std::nullopt;
    const std::string f = std::string("source.") + key;
    std::string e = expression_text(src[key], f);
    parse_field(e, s.coordinates, f);
    return e;
  };
  s.potential = optional_expr("potential");
  s.f = optional_expr("f");
  s.h = optional_expr("h");
  s.H = optional_expr("H");
  if ((s.f || s.h || s.H) && !(s.f && s.h && s.H)) config_error("source", "f, h and H must be given together");
  if (s.f && n != 4) config_error("source", "f, h and H need the chart (v, u, x, y)");
  return s;
}

json intervals_json(const std::vector<Interval>& v) {
  json out = json::array();
  for (const Interval& i : v) {
    json lo = std::isfinite(i.lo) ? json(i.lo) : json(nullptr);
    json hi = std::isfinite(i.hi) ? json(i.hi) : json(nullptr);
    out.push_back({lo, hi});
  }
  return out;
}

json config_object(const RunConfig& c) {
  json j;
  if (c.inline_source) {
    const InlineSource& s = *c.inline_source;
    json src;
    src["coordinates"] = s.coordinates;
    src["box"] = intervals_json(s.box);
    if (!s.domain.empty()) src["domain"] = intervals_json(s.domain);
    src["metric"] = s.metric;
    src["T"] = s.T;
    src["signature"] = signature_name(s.signature);
    if (s.potential) src["potential"] = *s.potential;
    if (s.f) {
      src["f"] = *s.f;
      src["h"] = *s.h;
      src["H"] = *s.H;
    }
    j["source"] = src;
  } else {
    j["source"] = c.gallery;
    json params = json::object();
    for (const auto& [k, v] : c.parameters) params[k] = v;
    for (const auto& [k, v] : c.expressions) params[k] = v;
    j["parameters"] = params;
  }
  j["samples"] = {{"strategy", c.samples.strategy == SampleStrategy::Halton ? "halton" : "grid"},
                  {"count", c.samples.count}};
  j["tolerance"] = c.tolerance;
  j["checks"] = c.checks;
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  j["synthetic_dimension"] = c.synthetic_dimension;
  j["bochner_curves"] = c.bochner_curves;
  return j;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "t-properties",       "proposition", "theorem-eq1", "constant-curvature", "ricci-relation",
      "connection-relations", "remark1-sectionals", "bochner", "bochner-inequality", "riccati",
      "big3",               "bakry-emery"};
  return names;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  require_keys(j, "", {"source", "parameters", "samples", "tolerance", "checks", "lambda", "synthetic_dimension",
                       "bochner_curves"});
  if (!j.contains("source")) config_error("source", "missing");

  RunConfig c;
  const json& src = j["source"];
  if (src.is_string()) {
    c.gallery = src.get<std::string>();
    GalleryParameters allowed;
    try {
      allowed = gallery_parameters(c.gallery);
    } catch (const BadParameters& e) {
      config_error("source", e.what());
    }
    if (j.contains("parameters")) {
      const json& p = j["parameters"];
      if (!p.is_object()) config_error("parameters", "expected an object");
      for (const auto& [k, v] : p.items()) {
        const std::string f = "parameters." + k;
        const auto& nums = allowed.numbers;
        const auto& exprs = allowed.expressions;
        if (std::find(nums.begin(), nums.end(), k) != nums.end()) {
          c.parameters[k] = number(v, f);
        } else if (std::find(exprs.begin(), exprs.end(), k) != exprs.end()) {
          c.expressions[k] = expression_text(v, f);
          parse_field(c.expressions[k], pp_wave_chart().names(), f);
        } else {
          config_error(f, "not a parameter of " + c.gallery);
        }
      }
    }
  } else if (src.is_object()) {
    if (j.contains("parameters")) config_error("parameters", "only allowed with a gallery source");
    c.inline_source = parse_inline(src);
  } else {
    config_error("source", "expected a gallery name or an inline definition");
  }

  if (j.contains("samples")) {
    const json& s = j["samples"];
    if (!s.is_object()) config_error("samples", "expected an object");
    require_keys(s, "samples", {"strategy", "count"});
    if (s.contains("strategy")) {
      const std::string st = text(s["strategy"], "samples.strategy");
      if (st == "halton") c.samples.strategy = SampleStrategy::Halton;
      else if (st == "grid") c.samples.strategy = SampleStrategy::Grid;
      else config_error("samples.strategy", "expected \"halton\" or \"grid\"");
    }
    if (s.contains("count")) c.samples.count = integer(s["count"], "samples.count");
    if (c.samples.count < 1) config_error("samples.count", "must be at least 1");
  }
  if (j.contains("tolerance")) {
    c.tolerance = number(j["tolerance"], "tolerance");
    if (!(c.tolerance > 0)) config_error("tolerance", "must be positive");
  }
  if (j.contains("checks")) {
    const json& ch = j["checks"];
    if (!ch.is_array()) config_error("checks", "expected an array of check names");
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const std::string f = "checks[" + std::to_string(i) + "]";
      const std::string name = text(ch[i], f);
      const auto& all = check_names();
      if (std::find(all.begin(), all.end(), name) == all.end()) config_error(f, "unknown check '" + name + "'");
      if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) c.checks.push_back(name);
    }
  }
  if (j.contains("lambda") && !j["lambda"].is_null()) c.lambda = number(j["lambda"], "lambda");
  if (j.contains("synthetic_dimension")) c.synthetic_dimension = number(j["synthetic_dimension"], "synthetic_dimension");
  if (j.contains("bochner_curves")) {
    c.bochner_curves = integer(j["bochner_curves"], "bochner_curves");
    if (c.bochner_curves < 1) config_error("bochner_curves", "must be at least 1");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig gallery_config(const std::string& name) {
  gallery_parameters(name);  // validates the name
  RunConfig c;
  c.gallery = name;
  return c;
}

RunConfig resolve_config(const std::string& path_or_name) {
  if (std::ifstream(path_or_name).good()) return load_config(path_or_name);
  const auto names = gallery_names();
  if (std::find(names.begin(), names.end(), path_or_name) != names.end()) return gallery_config(path_or_name);
  throw IoError("'" + path_or_name + "' is neither a readable config file nor a gallery name");
}

std::string config_to_json(const RunConfig& config) { return config_object(config).dump(2); }

GalleryEntry build_entry(const RunConfig& config) {
  GalleryEntry e;
  if (!config.inline_source) {
    e = gallery_entry(config.gallery, config.parameters, config.expressions);
  } else {
    const InlineSource& s = *config.inline_source;
    const Chart chart(s.coordinates, s.box, s.domain);
    const int n = chart.dim();
    std::vector<std::vector<Expr>> comps(uz(n), std::vector<Expr>(uz(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) comps[uz(i)][uz(j)] = chart.parse(s.metric[uz(i)][uz(j)]);
    std::vector<Expr> t;
    for (const auto& c : s.T) t.push_back(chart.parse(c));
    e.name = "inline";
    e.pair = make_sibling_pair(MetricField(chart, comps, s.signature), VectorFieldSpec(chart, t));
    if (s.potential) e.potential = chart.parse(*s.potential);
    if (s.f) e.pp = PpWaveProfile{chart.parse(*s.f), chart.parse(*s.h), chart.parse(*s.H)};
  }
  if (config.lambda) e.lambda = config.lambda;
  return e;
}

int VerificationReport::exit_code() const {
  if (passed) return 0;
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (!checks[i].result.passed) return static_cast<int>(i) + 1;
  return 1;
}

namespace {

CheckRecord failed_record(const std::string& name, double tol, const std::string& error) {
  CheckRecord r;
  r.result.name = name;
  r.result.tolerance = tol;
  r.result.max_residual = kNaN;
  r.result.raw_residual = kNaN;
  r.result.error = error;
  return r;
}

bool applicable(const std::string& name, const GalleryEntry& e) {
  if (name == "theorem-eq1" || name == "constant-curvature") return e.lambda.has_value();
  if (name == "remark1-sectionals" || name == "riccati") return e.lambda && *e.lambda > 0;
  if (name == "big3") return e.pp.has_value();
  if (name == "bakry-emery") return e.potential.has_value();
  return true;
}

std::string needs(const std::string& name) {
  if (name == "big3") return "a pp-wave profile (f, h, H)";
  if (name == "bakry-emery") return "a potential";
  if (name == "remark1-sectionals" || name == "riccati") return "a positive lambda";
  return "lambda";
}

std::vector<CheckRecord> run_check(const std::string& name, const GalleryEntry& e, const RunConfig& c,
                                   const std::vector<Vec>& samples) {
  const SiblingPair& pair = e.pair;
  const double tol = c.tolerance;
  std::vector<CheckRecord> out;
  auto single = [&](IdentityResult r) {
    CheckRecord rec;
    rec.result = std::move(r);
    out.push_back(std::move(rec));
    return &out.back();
  };

  if (name == "t-properties") {
    CheckRecord* rec = single(check_t_properties(pair, samples, tol));
    const TFieldReport rep = verify_T_properties(pair.g, pair.T, samples);
    rec->details = {{"unit", rep.unit_residual},
                    {"geodesic", rep.geodesic_residual},
                    {"symmetry", rep.symmetry_residual},
                    {"integrability", rep.integrability_residual}};
  } else if (name == "proposition") {
    single(check_proposition(pair, samples, tol));
  } else if (name == "theorem-eq1") {
    auto [a, b] = check_theorem_eq1(pair, *e.lambda, samples, tol);
    single(std::move(a))->details["lambda"] = *e.lambda;
    single(std::move(b))->details["lambda"] = *e.lambda;
  } else if (name == "constant-curvature") {
    const ConstantCurvatureFit fit = fit_constant_curvature(pair.gL, samples);
    IdentityResult r;
    r.name = name;
    r.samples = fit.samples;
    r.raw_residual = r.max_residual = std::max(std::abs(fit.lambda_hat - *e.lambda), fit.residual);
    r.tolerance = tol;
    r.passed = r.max_residual < tol;
    single(std::move(r))->details = {{"lambda", *e.lambda}, {"lambda_hat", fit.lambda_hat}, {"fit_residual", fit.residual}};
  } else if (name == "ricci-relation") {
    single(check_ricci_relation(pair, samples, tol));
  } else if (name == "connection-relations") {
    single(check_connection(pair, samples, tol));
  } else if (name == "remark1-sectionals") {
    single(check_remark1_sectionals(pair, *e.lambda, samples, tol))->details["lambda"] = *e.lambda;
  } else if (name == "bochner" || name == "bochner-inequality") {
    const std::vector<Vec> starts(samples.begin(),
                                  samples.begin() + std::min<std::ptrdiff_t>(c.bochner_curves, std::ssize(samples)));
    BochnerOptions o;
    o.points_per_curve = kBochnerPointsPerCurve;
    o.tolerance = kBochnerToleranceFactor * tol;
    const BochnerResult b = check_bochner(pair, starts, o);
    CheckRecord* rec = single(name == "bochner" ? b.identity : b.inequality);
    rec->details = {{"points", b.points}, {"min_gap", b.min_gap}, {"max_gap", b.max_gap}};
  } else if (name == "riccati") {
    const int n = pair.g.dim();
    std::vector<double> grid;
    for (int k = 0; k <= 200; ++k) grid.push_back(-5.0 + 0.05 * k);
    const double r = std::max({riccati_residual(n, *e.lambda, 0.0, grid), riccati_residual(n, *e.lambda, 1.0, grid),
                               riccati_constant_residual(n, *e.lambda, 1.0, grid),
                               riccati_constant_residual(n, *e.lambda, -1.0, grid)});
    IdentityResult res;
    res.name = name;
    res.samples = static_cast<int>(grid.size());
    res.max_residual = res.raw_residual = r;
    res.tolerance = tol;
    res.passed = r < tol;
    single(std::move(res))->details = {{"lambda", *e.lambda}, {"n", n}};
  } else if (name == "big3") {
    const Big3Residuals b = check_big3(e.pp->f, e.pp->h, e.pp->H, samples, tol);
    single(b.result)->details = {{"integrability", b.integrability}, {"first", b.first}, {"second", b.second}};
  } else if (name == "bakry-emery") {
    single(check_bakry_emery(pair.gL, *e.potential, samples, c.synthetic_dimension, tol))->details = {
        {"synthetic_dimension", c.synthetic_dimension}};
  }
  return out;
}

std::vector<std::string> record_names(const std::string& check) {
  if (check == "theorem-eq1") return {"theorem-eq1-riemannian", "theorem-eq1-lorentzian"};
  return {check};
}

}  // namespace

VerificationReport run(const RunConfig& config) {
  using Clock = std::chrono::steady_clock;
  VerificationReport report;
  report.config_json = config_to_json(config);

  const auto t0 = Clock::now();
  GalleryEntry entry;
  std::vector<Vec> samples;
  try {
    entry = build_entry(config);
    const Chart& chart = entry.pair.g.chart();
    samples = config.samples.strategy == SampleStrategy::Halton ? halton_points(chart, config.samples.count)
                                                                : grid_points(chart, config.samples.count);
  } catch (const Error& e) {
    CheckRecord r = failed_record("construct", config.tolerance, e.kind() + ": " + e.what());
    r.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    report.checks.push_back(std::move(r));
    return report;
  }

  std::vector<std::string> wanted = config.checks;
  if (wanted.empty())
    for (const auto& n : check_names())
      if (applicable(n, entry)) wanted.push_back(n);

  for (const auto& name : check_names()) {
    if (std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    const double tol = name.rfind("bochner", 0) == 0 ? kBochnerToleranceFactor * config.tolerance : config.tolerance;
    const auto start = Clock::now();
    std::vector<CheckRecord> recs;
    if (!applicable(name, entry)) {
      for (const auto& rn : record_names(name)) recs.push_back(failed_record(rn, tol, "NotApplicable: needs " + needs(name)));
    } else {
      try {
        recs = run_check(name, entry, config, samples);
      } catch (const Error& e) {
        recs.clear();
        for (const auto& rn : record_names(name)) recs.push_back(failed_record(rn, tol, e.kind() + ": " + e.what()));
      }
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    for (auto& r : recs) {
      r.wall_time = elapsed / static_cast<double>(recs.size());
      report.checks.push_back(std::move(r));
    }
  }
  report.passed = !report.checks.empty() &&
                  std::all_of(report.checks.begin(), report.checks.end(), [](const CheckRecord& r) { return r.result.passed; });
  return report;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double from_json_number(const json& v) { return v.is_null() ? kNaN : v.get<double>(); }

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  json j;
  j["config"] = json::parse(report.config_json);
  j["passed"] = report.passed;
  j["exit_code"] = report.exit_code();
  json checks = json::array();
  for (const CheckRecord& c : report.checks) {
    const IdentityResult& r = c.result;
    json rec;
    rec["name"] = r.name;
    rec["passed"] = r.passed;
    rec["samples"] = r.samples;
    rec["max_residual"] = finite_or_null(r.max_residual);
    rec["raw_residual"] = finite_or_null(r.raw_residual);
    rec["tolerance"] = r.tolerance;
    rec["worst_point"] = r.worst_point;
    if (!r.error.empty()) rec["error"] = r.error;
    json details = json::object();
    for (const auto& [k, v] : c.details) details[k] = finite_or_null(v);
    rec["details"] = details;
    if (include_timing) rec["wall_time"] = c.wall_time;
    checks.push_back(rec);
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& json_text) {
  VerificationReport report;
  try {
    const json j = json::parse(json_text);
    report.config_json = j.at("config").dump(2);
    report.passed = j.at("passed").get<bool>();
    for (const json& rec : j.at("checks")) {
      CheckRecord c;
      IdentityResult& r = c.result;
      r.name = rec.at("name").get<std::string>();
      r.passed = rec.at("passed").get<bool>();
      r.samples = rec.at("samples").get<int>();
      r.max_residual = from_json_number(rec.at("max_residual"));
      r.raw_residual = from_json_number(rec.at("raw_residual"));
      r.tolerance = rec.at("tolerance").get<double>();
      r.worst_point = rec.at("worst_point").get<Vec>();
      if (rec.contains("error")) r.error = rec["error"].get<std::string>();
      for (const auto& [k, v] : rec.at("details").items()) c.details[k] = from_json_number(v);
      if (rec.contains("wall_time")) c.wall_time = rec["wall_time"].get<double>();
      report.checks.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string report_to_text(const VerificationReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %7s %13s %10s  %s\n", "check", "samples", "max_residual", "tolerance",
                "result");
  out += line;
  for (const CheckRecord& c : report.checks) {
    const IdentityResult& r = c.result;
    char residual[32];
    if (std::isfinite(r.max_residual)) std::snprintf(residual, sizeof residual, "%.3e", r.max_residual);
    else std::snprintf(residual, sizeof residual, "%s", "-");
    std::snprintf(line, sizeof line, "%-24s %7d %13s %10.1e  %s\n", r.name.c_str(), r.samples, residual,
                  r.tolerance, r.passed ? "pass" : "FAIL");
    out += line;
    if (!r.error.empty()) out += "    " + r.error + "\n";
  }
  out += std::string("overall: ") + (report.passed ? "pass" : "FAIL") + "\n";
  return out;
}

namespace {

json matrix_json(const SymBilinear& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json geometry_json(const PointGeometry& pg) {
  const int n = pg.g.dim();
  json j;
  j["metric"] = matrix_json(pg.g);
  j["inverse"] = matrix_json(pg.g_inv);
  json gamma = json::array();
  for (int k = 0; k < n; ++k) {
    json a = json::array();
    for (int i = 0; i < n; ++i) {
      json b = json::array();
      for (int l = 0; l < n; ++l) b.push_back(pg.christoffel(k, i, l));
      a.push_back(b);
    }
    gamma.push_back(a);
  }
  j["christoffel"] = gamma;
  json rm = json::array();
  for (int a = 0; a < n; ++a) {
    json x = json::array();
    for (int b = 0; b < n; ++b) {
      json y = json::array();
      for (int c = 0; c < n; ++c) {
        json z = json::array();
        for (int d = 0; d < n; ++d) z.push_back(pg.riemann(a, b, c, d));
        y.push_back(z);
      }
      x.push_back(y);
    }
    rm.push_back(x);
  }
  j["riemann"] = rm;
  j["ricci"] = matrix_json(pg.ricci);
  j["scalar"] = pg.scalar;
  return j;
}

}  // namespace

std::string curvature_json(const GalleryEntry& entry, std::span<const double> point) {
  if (static_cast<int>(point.size()) != entry.pair.g.dim())
    throw DimensionMismatch("point has " + std::to_string(point.size()) + " coordinates, chart has " +
                            std::to_string(entry.pair.g.dim()));
  json j;
  j["coordinates"] = entry.pair.g.chart().names();
  j["point"] = Vec(point.begin(), point.end());
  j["g"] = geometry_json(riemann_at(entry.pair.g, point));
  j["g_L"] = geometry_json(riemann_at(entry.pair.gL, point));
  return j.dump(2) + "\n";
}

std::string trajectory_text(const Trajectory& trajectory) {
  std::string out;
  for (const GeodesicState& s : trajectory.states) {
    out += format_double(s.s);
    for (double x : s.x) out += "\t" + format_double(x);
    for (double v : s.v) out += "\t" + format_double(v);
    out += "\t" + format_double(s.speed) + "\n";
  }
  return out;
}

}  // namespace sibgeo
