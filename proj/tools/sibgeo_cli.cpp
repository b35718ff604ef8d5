// sibgeo: verify curvature identities of Riemannian/Lorentzian sibling pairs.
//
//   sibgeo verify <config|gallery-name> [--report out.json] [--json]
//   sibgeo curvature <config> --at p1,p2,...
//   sibgeo geodesic <config> --from p1,... --velocity v1,... --steps N --step h
//   sibgeo gallery list
//
// Exit status: 0 when every check passes, else the 1-based position of the
// first failing check; 64 for config errors, 66 for unreadable input, 70 for
// anything else.

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sibgeo/run.hpp"

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitInput = 66;
constexpr int kExitInternal = 70;

std::vector<double> parse_point(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw sibgeo::ConfigError(flag + ": cannot read '" + item + "' as a number");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

int fail(int code, const std::string& msg) {
  std::cerr << "sibgeo: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify curvature identities of Riemannian/Lorentzian sibling metrics"};
  app.require_subcommand(1);

  std::string source;
  std::string report_path;
  bool json_out = false;
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("config", source, "Config file or gallery name")->required();
  verify->add_option("--report", report_path, "Write the JSON report to this file");
  verify->add_flag("--json", json_out, "Print the JSON report instead of the table");

  std::string at;
  auto* curvature = app.add_subcommand("curvature", "Dump metric, Christoffels and curvature at a point");
  curvature->add_option("config", source, "Config file or gallery name")->required();
  curvature->add_option("--at", at, "Point, comma-separated")->required();

  std::string from, velocity, metric = "riemannian";
  int steps = 100;
  double step = 0.01;
  auto* geodesic = app.add_subcommand("geodesic", "Integrate a geodesic and print the trajectory");
  geodesic->add_option("config", source, "Config file or gallery name")->required();
  geodesic->add_option("--from", from, "Start point, comma-separated")->required();
  geodesic->add_option("--velocity", velocity, "Initial velocity, comma-separated")->required();
  geodesic->add_option("--steps", steps, "Number of RK4 steps")->check(CLI::PositiveNumber);
  geodesic->add_option("--step", step, "Step size")->check(CLI::PositiveNumber);
  geodesic->add_option("--metric", metric, "Which sibling to integrate")
      ->check(CLI::IsMember({"riemannian", "lorentzian"}));

  auto* gallery = app.add_subcommand("gallery", "Built-in examples");
  auto* list = gallery->add_subcommand("list", "List gallery entries");
  gallery->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : sibgeo::gallery_names()) {
        const sibgeo::GalleryParameters p = sibgeo::gallery_parameters(name);
        std::cout << name;
        for (const auto& k : p.numbers) std::cout << " " << k;
        for (const auto& k : p.expressions) std::cout << " " << k;
        std::cout << "\n";
      }
      return 0;
    }

    const sibgeo::RunConfig config = sibgeo::resolve_config(source);

    if (verify->parsed()) {
      const sibgeo::VerificationReport report = sibgeo::run(config);
      if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) return fail(kExitInput, "cannot write report '" + report_path + "'");
        out << sibgeo::report_to_json(report);
      }
      std::cout << (json_out ? sibgeo::report_to_json(report) : sibgeo::report_to_text(report));
      return report.exit_code();
    }

    const sibgeo::GalleryEntry entry = sibgeo::build_entry(config);
    if (curvature->parsed()) {
      std::cout << sibgeo::curvature_json(entry, parse_point(at, "--at"));
      return 0;
    }
    if (geodesic->parsed()) {
      const auto& m = metric == "riemannian" ? entry.pair.g : entry.pair.gL;
      const auto p0 = parse_point(from, "--from");
      const auto v0 = parse_point(velocity, "--velocity");
      const sibgeo::Trajectory tr = sibgeo::integrate_geodesic(m, p0, v0, step, steps);
      std::cout << sibgeo::trajectory_text(tr);
      if (tr.stopped_early) std::cerr << "sibgeo: stopped early: " << tr.stop_reason << "\n";
      return 0;
    }
  } catch (const sibgeo::IoError& e) {
    return fail(kExitInput, e.what());
  } catch (const sibgeo::Error& e) {
    return fail(kExitConfig, e.kind() + ": " + e.what());
  } catch (const std::exception& e) {
    return fail(kExitInternal, e.what());
  }
  return 0;
}
