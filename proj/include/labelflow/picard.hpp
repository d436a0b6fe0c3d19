#pragma once

#include <span>
#include <vector>

#include "labelflow/evolve.hpp"
#include "labelflow/field.hpp"

namespace labelflow::evolve {

struct PicardOptions {
  /// Number of uniform time steps on [0, t_end].
  int steps = 10;
  /// Keep every iterate's path (memory grows with iterations).
  bool keep_iterates = false;
};

/// Successive approximations delta_{n+1} = Theta[delta_n, phi] on a fixed
/// time grid. Between grid times a path is the linear interpolant.
struct PicardRun {
  std::vector<double> times;
  /// Final iterate, one field per time.
  std::vector<VectorField> delta;
  /// Stored only with keep_iterates; iterates[0] is the zero path.
  std::vector<std::vector<VectorField>> iterates;
  /// residuals[n] = max over times of ||delta_{n+1} - delta_n||_{0,mu}.
  std::vector<double> residuals;
  int iterations = 0;
  bool converged = false;
  /// T ||curl phi||_{0,mu}, compared against c epsilon by callers.
  double time_curl_product = 0.0;
};

/// c epsilon / ||curl phi||_{0,mu}: the interval length for which the
/// fixed-point argument applies.
double picard_time_interval(const VectorField& phi, const RunConfig& config);

/// True when each of the last `window` residuals is no smaller than the one
/// before it.
bool contraction_stalled(std::span<const double> residuals, int window = 3);

/// Runs successive approximations over [0, config.t_end]. Each iteration
/// solves the linear transport problem with u = W(delta_n(t), phi) frozen
/// from the previous path, by RK4 on the time grid.
///
/// Throws NoContraction when the residual fails to decrease on three
/// consecutive iterations.
PicardRun picard_solve(const VectorField& phi, const RunConfig& config,
                       const PicardOptions& options = {});

}  // namespace labelflow::evolve
