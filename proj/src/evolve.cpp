#include "labelflow/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "labelflow/error.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::evolve {
namespace {

std::string where(const ChartState& s) {
  std::ostringstream os;
  os << "chart " << s.chart_index << ", t = " << s.t_now;
  return os.str();
}

double max_sup(const VectorField& v) { return sup_norm(v); }

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::kBadParameters, m); };
  if (!(epsilon_reset >= 0.0)) fail("epsilon_reset must be >= 0");
  if (!(mu > 0.0 && mu < 1.0)) fail("mu must lie in (0, 1)");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) fail("dt_max must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end must be >= 0");
  if (!(picard_tol > 0.0)) fail("picard_tol must be positive");
  if (picard_max_iter < 1) fail("picard_max_iter must be >= 1");
  if (!(picard_c > 0.0)) fail("picard_c must be positive");
  interpolation.validate();
}

ChartState ChartState::birth(const VectorField& phi, double t, int index,
                             const RunConfig& config) {
  const double div = eos::relative_divergence(phi);
  if (div > 1e-10) {
    std::ostringstream os;
    os << "chart initial velocity is not divergence-free (relative " << div << ")";
    throw Error(ErrorKind::kBadParameters, os.str());
  }
  ChartState s{index, t, t,
               std::make_shared<const eos::EquationOfState>(phi, config.interpolation),
               VectorField(phi.grid()), VectorField(phi.grid()), {}, 0.0};
  s.u = s.eos->velocity(s.delta);
  s.holder_grad_delta.mu = config.mu;
  return s;
}

VectorField rhs_theta(const VectorField& delta, const VectorField& u) {
  require_same_grid(delta.grid(), u.grid(), "rhs_theta");
  const MatrixField g = spectral::jacobian(delta);
  VectorField out(delta.grid());
  const std::size_t size = delta.grid().size();
  for (int c = 0; c < 3; ++c) {
    ScalarField adv(delta.grid());
    for (std::size_t i = 0; i < size; ++i)
      adv[i] = u[0][i] * g(c, 0)[i] + u[1][i] * g(c, 1)[i] + u[2][i] * g(c, 2)[i];
    out[c] = spectral::dealias(adv);
    for (std::size_t i = 0; i < size; ++i) out[c][i] = -out[c][i] - u[c][i];
  }
  return out;
}

double stable_dt(const VectorField& u, const RunConfig& config) {
  const double umax = max_sup(u);
  if (umax == 0.0) return config.dt_max;
  return std::min(config.dt_max, config.cfl * u.grid().spacing() / umax);
}

void update_holder(ChartState& state, const RunConfig& config) {
  const MatrixField g = spectral::jacobian(state.delta);
  state.sup_grad_delta = sup_norm(g);
  if (config.trigger == ResetTrigger::kHolder) {
    state.holder_grad_delta = fields::holder_norm_c0mu(g, config.mu);
  } else {
    state.holder_grad_delta = fields::HolderNorm{};
    state.holder_grad_delta.mu = config.mu;
    state.holder_grad_delta.sup_part = state.sup_grad_delta;
    state.holder_grad_delta.total = state.sup_grad_delta;
  }
}

double reset_statistic(const ChartState& state, const RunConfig& config) {
  return config.trigger == ResetTrigger::kHolder ? state.holder_grad_delta.total
                                                 : state.sup_grad_delta;
}

void step_self_consistent(ChartState& state, double dt, const RunConfig& config,
                          StageVelocities* stages) {
  if (!all_finite(state.u) || !all_finite(state.delta)) {
    throw Error(ErrorKind::kNonFinite, "state is not finite (" + where(state) + ")");
  }
  const double limit = stable_dt(state.u, config);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds stable bound " << limit << " (" << where(state) << ")";
    throw Error(ErrorKind::kCflViolation, os.str());
  }
  const VectorField& d0 = state.delta;
  const eos::EquationOfState& eos = *state.eos;

  VectorField u1 = state.u;
  const VectorField k1 = rhs_theta(d0, u1);
  VectorField d = d0;
  d.axpy(0.5 * dt, k1);
  VectorField u2 = eos.velocity(d);
  const VectorField k2 = rhs_theta(d, u2);
  d = d0;
  d.axpy(0.5 * dt, k2);
  VectorField u3 = eos.velocity(d);
  const VectorField k3 = rhs_theta(d, u3);
  d = d0;
  d.axpy(dt, k3);
  VectorField u4 = eos.velocity(d);
  const VectorField k4 = rhs_theta(d, u4);

  VectorField next = d0;
  next.axpy(dt / 6.0, k1);
  next.axpy(dt / 3.0, k2);
  next.axpy(dt / 3.0, k3);
  next.axpy(dt / 6.0, k4);
  if (!all_finite(next)) {
    throw Error(ErrorKind::kNonFinite, "displacement left the finite range (" + where(state) + ")");
  }
  VectorField u_next = eos.velocity(next);
  if (!all_finite(u_next)) {
    throw Error(ErrorKind::kNonFinite, "velocity left the finite range (" + where(state) + ")");
  }
  state.delta = std::move(next);
  state.u = std::move(u_next);
  state.t_now += dt;
  update_holder(state, config);
  if (stages) stages->u = {std::move(u1), std::move(u2), std::move(u3), std::move(u4)};
}

bool run_chart(ChartState& state, const RunConfig& config, const StepObserver& observer) {
  StageVelocities stages{{VectorField(state.grid()), VectorField(state.grid()),
                          VectorField(state.grid()), VectorField(state.grid())}};
  const double t_tol = 1e-12 * std::max(1.0, config.t_end);
  while (state.t_now < config.t_end - t_tol) {
    double dt = stable_dt(state.u, config);
    // Land exactly on t_end; avoid a sliver step by splitting the remainder.
    const double remaining = config.t_end - state.t_now;
    if (dt >= remaining * (1.0 - 1e-9)) {
      dt = remaining;
    } else if (dt > 0.5 * remaining) {
      dt = 0.5 * remaining;
    }
    step_self_consistent(state, dt, config, &stages);
    if (std::abs(state.t_now - config.t_end) <= t_tol) state.t_now = config.t_end;
    if (observer.on_step) observer.on_step(state, stages, dt);
    if (reset_statistic(state, config) >= config.epsilon_reset) return true;
  }
  return false;
}

ChartState reset_chart(const ChartState& state, const RunConfig& config) {
  ChartState next = ChartState::birth(spectral::leray_project(state.u), state.t_now,
                                      state.chart_index + 1, config);
  return next;
}

namespace {

ChartSummary open_summary(const ChartState& s, double mu) {
  ChartSummary c;
  c.chart_index = s.chart_index;
  c.t_start = s.t_start;
  c.grad_u_holder = fields::holder_norm_c0mu(spectral::jacobian(s.u), mu).total;
  c.curl_holder = fields::holder_norm_c0mu(spectral::curl(s.u), mu).total;
  return c;
}

}  // namespace

ContinuationResult run_continuation(const VectorField& phi0, const RunConfig& config,
                                    const StepObserver& observer) {
  config.validate();
  ContinuationResult result{ChartState::birth(phi0, 0.0, 0, config), {}, 0.0, 1.0};
  ChartState& state = result.final_state;
  StepObserver inner = observer;
  ChartSummary current = open_summary(state, config.mu);
  inner.on_step = [&](const ChartState& s, const StageVelocities& st, double dt) {
    current.max_sup_delta = std::max(current.max_sup_delta, max_sup(s.delta));
    if (observer.on_step) observer.on_step(s, st, dt);
  };
  while (true) {
    const bool reset = run_chart(state, config, inner);
    current.t_end = state.t_now;
    current.reset = reset;
    current.lifetime_constant = (current.t_end - current.t_start) * current.grad_u_holder;
    result.charts.push_back(current);
    if (!reset || state.t_now >= config.t_end) break;
    ChartState next = reset_chart(state, config);
    if (observer.on_reset) observer.on_reset(state, next);
    state = std::move(next);
    current = open_summary(state, config.mu);
  }

  bool any_reset = false;
  double c_min = std::numeric_limits<double>::infinity();
  for (const auto& c : result.charts)
    if (c.reset) {
      any_reset = true;
      c_min = std::min(c_min, c.lifetime_constant);
    }
  if (!any_reset)
    for (const auto& c : result.charts) c_min = std::min(c_min, c.lifetime_constant);
  result.c_observed = std::isfinite(c_min) ? c_min : 0.0;
  for (std::size_t i = 1; i < result.charts.size(); ++i) {
    const double prev = result.charts[i - 1].grad_u_holder;
    if (prev > 0.0)
      result.k_observed = std::max(result.k_observed, result.charts[i].grad_u_holder / prev);
  }
  return result;
}

}  // namespace labelflow::evolve
