// ptscarf: complex Scarf-II superpotentials, partner potentials and spectra.
//
//   ptscarf --A 1.5 --B 2 --alpha 1 --cpt 0.5 potential
//   ptscarf --A 2.5 --B 1 spectrum --points 2001
//   ptscarf --A 1.5 scan --scan-min 0 --scan-max 0.5 --scan-steps 6 --format csv
//   ptscarf --A 1.5 --cpt 0.5 verify

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ptscarf/report.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("ptscarf");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PTSCARF_LOG")) {
    const std::string lvl = env;
    if (lvl == "error") spdlog::set_level(spdlog::level::err);
    else if (lvl == "warn") spdlog::set_level(spdlog::level::warn);
    else if (lvl == "info") spdlog::set_level(spdlog::level::info);
    else if (lvl == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ignoring PTSCARF_LOG={} (expected error, warn, info or debug)", lvl);
  }
}

/// Grid and tolerance overrides from a JSON file; command-line flags win.
void apply_config_file(const std::string& path, ptscarf::RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ptscarf::ValidationError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ptscarf::ValidationError("config file " + path + ": " + e.what());
  }
  auto& s = cfg.solver;
  if (j.contains("half_width")) s.half_width = j.at("half_width").get<double>();
  if (j.contains("points")) s.n_points = j.at("points").get<std::size_t>();
  if (j.contains("order")) s.order = j.at("order").get<int>();
  if (j.contains("match_tol")) s.match_tol = j.at("match_tol").get<double>();
  if (j.contains("pairing_tol")) s.pairing_tol = j.at("pairing_tol").get<double>();
  if (j.contains("boundary_eps")) s.bound.boundary_eps = j.at("boundary_eps").get<double>();
  if (j.contains("param_tol")) cfg.param_tol = j.at("param_tol").get<double>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
}

} // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Complex Scarf-II SUSY/PT-symmetry toolkit", "ptscarf"};
  app.fallthrough();
  app.require_subcommand(1);

  double A = 0.0, alpha = 1.0, cpt = 0.0;
  std::optional<double> B, half_width, match_tol, scan_min, scan_max;
  std::optional<int> points, order, scan_steps, jobs;
  std::optional<std::string> out, config;
  std::string format = "json";

  app.add_option("--A", A, "tanh coefficient A")->required();
  app.add_option("--B", B, "sech coefficient B (default A + alpha/2)");
  app.add_option("--alpha", alpha, "inverse length alpha")->capture_default_str();
  app.add_option("--cpt", cpt, "PT-breaking parameter c_pt")->capture_default_str();
  app.add_option("--half-width", half_width, "grid half-width L (default 20/alpha)");
  app.add_option("--points", points, "grid points, odd (default 4001)");
  app.add_option("--order", order, "stencil order")->check(CLI::IsMember({2, 4}));
  app.add_option("--match-tol", match_tol, "analytic/numeric matching tolerance");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--scan-min", scan_min, "scan: smallest c_pt");
  app.add_option("--scan-max", scan_max, "scan: largest c_pt");
  app.add_option("--scan-steps", scan_steps, "scan: number of points (>= 2)");
  app.add_option("--jobs", jobs, "scan: concurrent points");
  app.add_option("--config", config, "JSON file with grid/tolerance overrides");

  auto* potential = app.add_subcommand("potential", "superpotentials and partner potential");
  auto* spectrum = app.add_subcommand("spectrum", "analytic vs numerical bound states");
  auto* scan = app.add_subcommand("scan", "bifurcation sweep over c_pt");
  auto* verify = app.add_subcommand("verify", "run the property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ptscarf::exit_code::kValidation;
  }

  ptscarf::RunConfig cfg;
  ptscarf::RunResult result;
  try {
    if (config) apply_config_file(*config, cfg);
    cfg.params = {A, B.value_or(A + 0.5 * alpha), alpha, cpt};
    if (half_width) cfg.solver.half_width = *half_width;
    if (points) {
      if (*points < 0) throw ptscarf::ValidationError("--points must be positive");
      cfg.solver.n_points = static_cast<std::size_t>(*points);
    }
    if (order) cfg.solver.order = *order;
    if (match_tol) cfg.solver.match_tol = *match_tol;
    if (jobs) cfg.jobs = *jobs;
    cfg.out = out;
    cfg.format = format == "csv" ? ptscarf::OutputFormat::Csv : ptscarf::OutputFormat::Json;
    if (scan_min || scan_max || scan_steps) {
      cfg.scan = ptscarf::ScanRange{scan_min.value_or(0.0), scan_max.value_or(0.0), scan_steps.value_or(2)};
    }
    if (cfg.format == ptscarf::OutputFormat::Csv && !scan->parsed()) {
      throw ptscarf::ValidationError("--format csv is only available for scan");
    }
    // Grid problems surface here rather than deep inside a run.
    (void)cfg.solver.make_grid(alpha > 0.0 ? alpha : 1.0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ptscarf::exit_code::kValidation;
  }

  if (potential->parsed()) result = ptscarf::run_potential(cfg);
  else if (spectrum->parsed()) result = ptscarf::run_spectrum(cfg);
  else if (scan->parsed()) result = ptscarf::run_scan(cfg);
  else if (verify->parsed()) result = ptscarf::run_verify(cfg);

  if (!result.output.empty()) {
    if (cfg.out) {
      std::ofstream f(*cfg.out, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << *cfg.out << '\n';
        return ptscarf::exit_code::kValidation;
      }
      f << result.output;
    } else {
      std::cout << result.output;
    }
  }
  if (!result.message.empty()) std::cerr << result.message << '\n';
  return result.exit_code;
}
