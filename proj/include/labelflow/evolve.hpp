#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "labelflow/eos.hpp"
#include "labelflow/field.hpp"
#include "labelflow/holder.hpp"
#include "labelflow/interpolation.hpp"

namespace labelflow::evolve {

enum class ResetTrigger {
  kHolder,       // C^{0,mu} norm of grad delta
  kSupGradient,  // sup |grad delta|, cheaper
};

struct RunConfig {
  /// Reset threshold on grad delta. 0 resets after every step; infinity
  /// never resets.
  double epsilon_reset = 0.25;
  double mu = 0.5;
  double cfl = 0.5;
  double dt_max = 1e-3;
  double t_end = 0.5;
  double picard_tol = 1e-10;
  int picard_max_iter = 30;
  /// Constant c of the time-interval bound T ||curl phi||_{0,mu} <= c epsilon.
  double picard_c = 0.1;
  ResetTrigger trigger = ResetTrigger::kHolder;
  fields::InterpolationScheme interpolation{};

  /// Throws BadParameters.
  void validate() const;
};

/// One chart: A = x + delta measured from t_start, velocity reconstructed
/// from the chart's initial velocity phi.
struct ChartState {
  int chart_index = 0;
  double t_start = 0.0;
  double t_now = 0.0;
  std::shared_ptr<const eos::EquationOfState> eos;
  VectorField delta;
  VectorField u;
  fields::HolderNorm holder_grad_delta;
  double sup_grad_delta = 0.0;

  const VectorField& phi() const { return eos->phi(); }
  const Grid& grid() const { return delta.grid(); }

  /// delta = 0, u = W(0, phi). Throws BadParameters unless phi is
  /// divergence-free to 1e-10 relative.
  static ChartState birth(const VectorField& phi, double t, int index,
                          const RunConfig& config);
};

/// -(u.grad) delta - u, product dealiased.
VectorField rhs_theta(const VectorField& delta, const VectorField& u);

/// min(dt_max, cfl h / max|u|).
double stable_dt(const VectorField& u, const RunConfig& config);

/// Velocities seen by the four Runge-Kutta stages (t, t+dt/2, t+dt/2, t+dt).
struct StageVelocities {
  std::array<VectorField, 4> u;
};

/// One RK4 step of d delta/dt = rhs_theta(delta, W(delta, phi)).
/// Throws CflViolation when dt exceeds stable_dt and NonFinite on overflow.
void step_self_consistent(ChartState& state, double dt, const RunConfig& config,
                          StageVelocities* stages = nullptr);

/// Recomputes the reset statistic of grad delta.
void update_holder(ChartState& state, const RunConfig& config);
double reset_statistic(const ChartState& state, const RunConfig& config);

struct StepObserver {
  std::function<void(const ChartState&, const StageVelocities&, double dt)> on_step;
  std::function<void(const ChartState& before, const ChartState& after)> on_reset;
};

/// Advances until t_end or until the reset statistic reaches epsilon_reset.
/// Returns true in the latter case.
bool run_chart(ChartState& state, const RunConfig& config,
               const StepObserver& observer = {});

/// New chart at t_now with phi = P u and delta = 0.
ChartState reset_chart(const ChartState& state, const RunConfig& config);

struct ChartSummary {
  int chart_index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  bool reset = false;
  /// ||grad u||_{0,mu} and ||curl u||_{0,mu} at chart birth.
  double grad_u_holder = 0.0;
  double curl_holder = 0.0;
  /// (t_end - t_start) ||grad u||_{0,mu}, the measured lifetime constant.
  double lifetime_constant = 0.0;
  double max_sup_delta = 0.0;
};

struct ContinuationResult {
  ChartState final_state;
  std::vector<ChartSummary> charts;
  /// min lifetime constant over charts that ended in a reset (or over all
  /// charts when none did).
  double c_observed = 0.0;
  /// max ratio ||grad u_{n+1}|| / ||grad u_n|| across resets, 1 without resets.
  double k_observed = 1.0;
};

/// Chains charts from t = 0 to t_end.
ContinuationResult run_continuation(const VectorField& phi0, const RunConfig& config,
                                    const StepObserver& observer = {});

}  // namespace labelflow::evolve
