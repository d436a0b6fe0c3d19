#pragma once

#include <iosfwd>
#include <vector>

#include "labelflow/config.hpp"
#include "labelflow/evolve.hpp"
#include "labelflow/loop.hpp"

namespace labelflow::driver {

struct RunSummary {
  config::Mode mode = config::Mode::kDirect;
  int steps = 0;
  int charts = 0;
  int rows = 0;
  int snapshots = 0;
  double t_final = 0.0;
  double c_observed = 0.0;
  double k_observed = 1.0;
  /// oracle_compare only.
  double final_compare = 0.0;
  /// picard only.
  std::vector<double> residuals;
  bool converged = false;
  double time_curl_product = 0.0;
};

/// Three circles of radius L/4 about the box centre, normal to x, y and z.
std::vector<fields::MarkerLoop> default_loops(const Grid& grid, int markers);

/// RK4 step of every marker through the stage velocities of one solver step,
/// wrapped into the box.
void advect_markers(std::vector<fields::MarkerLoop>& loops,
                   const evolve::StageVelocities& stages, double dt);

/// Executes the configured mode, writing the diagnostics CSV and snapshots.
/// Progress lines go to `log` when it is non-null. Errors raised during the
/// run carry the chart index and time in their message.
RunSummary run(const config::Config& cfg, std::ostream* log = nullptr);

}  // namespace labelflow::driver
