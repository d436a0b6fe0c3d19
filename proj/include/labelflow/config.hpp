#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "labelflow/evolve.hpp"
#include "labelflow/scenario.hpp"

namespace labelflow::config {

enum class Mode { kDirect, kPicard, kOracleCompare };

std::string_view to_string(Mode mode);

struct OutputManifest {
  std::filesystem::path diagnostics_csv = "diagnostics.csv";
  std::filesystem::path snapshot_dir = "snapshots";
  /// Diagnostics row every this many steps (first and last step always).
  int diagnostics_cadence = 10;
  /// Snapshot every this many steps; only used when `fields` is non-empty.
  int snapshot_cadence = 100;
  /// Any of u, delta, phi, omega, n_A.
  std::vector<std::string> fields;
};

struct Config {
  int n = 32;
  double length = 6.283185307179586;
  evolve::RunConfig run;
  scenario::Scenario ic;
  OutputManifest output;
  Mode mode = Mode::kDirect;
  int picard_steps = 10;
  int loop_markers = 64;
};

/// Parses the sectioned key = value format. Overrides are "section.key=value"
/// and are applied after the file. Unknown sections or keys, malformed
/// values and values outside their ranges raise ConfigError.
Config parse_config(std::string_view text, const std::vector<std::string>& overrides = {});
Config load_config(const std::filesystem::path& path,
                   const std::vector<std::string>& overrides = {});

/// The configuration written back in the same format.
std::string format_config(const Config& c);

}  // namespace labelflow::config
