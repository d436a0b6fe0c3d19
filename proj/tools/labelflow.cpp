// Command-line driver: run / picard / compare a configuration, or describe a
// snapshot.
//
//   labelflow run config.ini [--override section.key=value]... [--quiet]
//   labelflow picard config.ini
//   labelflow compare config.ini
//   labelflow info snapshot.json
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
// 4 no contraction, 1 anything else.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labelflow/config.hpp"
#include "labelflow/driver.hpp"
#include "labelflow/error.hpp"
#include "labelflow/output.hpp"

namespace {

using labelflow::ErrorKind;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfigError:
    case ErrorKind::kBadParameters:
      return 2;
    case ErrorKind::kNonFinite:
    case ErrorKind::kCflViolation:
    case ErrorKind::kNonZeroMean:
    case ErrorKind::kDegenerateLoop:
    case ErrorKind::kInsufficientHistory:
    case ErrorKind::kGridMismatch:
      return 3;
    case ErrorKind::kNoContraction:
      return 4;
    case ErrorKind::kIo:
      return 1;
  }
  return 1;
}

int run_mode(const std::string& path, const std::vector<std::string>& overrides,
             const char* forced_mode, bool quiet) {
  std::vector<std::string> all = overrides;
  if (forced_mode) all.push_back(std::string("mode.mode=") + forced_mode);
  const auto cfg = labelflow::config::load_config(path, all);
  const auto summary = labelflow::driver::run(cfg, quiet ? nullptr : &std::cerr);
  if (!quiet) {
    std::cout << "mode=" << labelflow::config::to_string(summary.mode)
              << " steps=" << summary.steps << " charts=" << summary.charts
              << " rows=" << summary.rows << " t_final=" << summary.t_final;
    if (summary.mode == labelflow::config::Mode::kOracleCompare)
      std::cout << " compare=" << summary.final_compare;
    if (summary.mode == labelflow::config::Mode::kPicard)
      std::cout << " iterations=" << summary.residuals.size()
                << " converged=" << (summary.converged ? "true" : "false")
                << " time_curl_product=" << summary.time_curl_product;
    else
      std::cout << " c_observed=" << summary.c_observed << " k_observed=" << summary.k_observed;
    std::cout << "\n";
  }
  return 0;
}

int info(const std::string& path) {
  const auto s = labelflow::output::read_snapshot_info(path);
  std::cout << "field=" << s.field << " n=" << s.n << " L=" << s.length << " t=" << s.t
            << " chart_index=" << s.chart_index << " components=" << s.components
            << " dtype=" << s.dtype << " order=" << s.order << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-box incompressible Euler solver on the back-to-labels map"};
  app.require_subcommand(1);
  std::vector<std::string> overrides;
  bool quiet = false;
  app.add_option("--override", overrides, "Replace a configuration value: section.key=value")
      ->take_all()
      ->allow_extra_args(false);
  app.add_flag("--quiet,-q", quiet, "Suppress progress output");

  std::string config_path, snapshot_path;
  auto* run = app.add_subcommand("run", "Run the mode named in the configuration");
  run->add_option("config", config_path)->required();
  auto* picard = app.add_subcommand("picard", "Run successive approximations");
  picard->add_option("config", config_path)->required();
  auto* compare = app.add_subcommand("compare", "Run alongside the velocity-form oracle");
  compare->add_option("config", config_path)->required();
  auto* info_cmd = app.add_subcommand("info", "Describe a snapshot sidecar");
  info_cmd->add_option("snapshot", snapshot_path)->required();
  for (auto* sub : {run, picard, compare, info_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_mode(config_path, overrides, nullptr, quiet);
    if (*picard) return run_mode(config_path, overrides, "picard", quiet);
    if (*compare) return run_mode(config_path, overrides, "oracle_compare", quiet);
    if (*info_cmd) return info(snapshot_path);
  } catch (const labelflow::Error& e) {
    std::cerr << "error: " << labelflow::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
