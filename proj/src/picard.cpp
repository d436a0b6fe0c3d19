#include "labelflow/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "labelflow/eos.hpp"
#include "labelflow/error.hpp"
#include "labelflow/holder.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::evolve {
namespace {

double path_distance(const std::vector<VectorField>& a, const std::vector<VectorField>& b,
                     double mu) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    d = std::max(d, fields::holder_norm_c0mu(a[k] - b[k], mu).total);
  return d;
}

// Linear transport d delta/dt = rhs_theta(delta, u(t)) with u known at the
// grid times and at the midpoints.
std::vector<VectorField> transport(const std::vector<VectorField>& u_nodes,
                                   const std::vector<VectorField>& u_mid, double dt) {
  const Grid& g = u_nodes.front().grid();
  std::vector<VectorField> path;
  path.reserve(u_nodes.size());
  path.emplace_back(g);
  for (std::size_t k = 0; k + 1 < u_nodes.size(); ++k) {
    const VectorField& d0 = path.back();
    const VectorField k1 = rhs_theta(d0, u_nodes[k]);
    VectorField d = d0;
    d.axpy(0.5 * dt, k1);
    const VectorField k2 = rhs_theta(d, u_mid[k]);
    d = d0;
    d.axpy(0.5 * dt, k2);
    const VectorField k3 = rhs_theta(d, u_mid[k]);
    d = d0;
    d.axpy(dt, k3);
    const VectorField k4 = rhs_theta(d, u_nodes[k + 1]);
    VectorField next = d0;
    next.axpy(dt / 6.0, k1);
    next.axpy(dt / 3.0, k2);
    next.axpy(dt / 3.0, k3);
    next.axpy(dt / 6.0, k4);
    if (!all_finite(next)) {
      throw Error(ErrorKind::kNonFinite, "Picard iterate left the finite range");
    }
    path.push_back(std::move(next));
  }
  return path;
}

}  // namespace

double picard_time_interval(const VectorField& phi, const RunConfig& config) {
  const double curl = fields::holder_norm_c0mu(spectral::curl(phi), config.mu).total;
  if (curl == 0.0) return config.t_end;
  return config.picard_c * config.epsilon_reset / curl;
}

bool contraction_stalled(std::span<const double> residuals, int window) {
  const int m = static_cast<int>(residuals.size());
  if (window < 1 || m < window + 1) return false;
  for (int k = m - window; k < m; ++k) {
    if (residuals[k] < residuals[k - 1]) return false;
  }
  return true;
}

PicardRun picard_solve(const VectorField& phi, const RunConfig& config,
                       const PicardOptions& options) {
  config.validate();
  if (options.steps < 1) {
    throw Error(ErrorKind::kBadParameters, "Picard needs at least one time step");
  }
  if (eos::relative_divergence(phi) > 1e-10) {
    throw Error(ErrorKind::kBadParameters, "Picard: phi is not divergence-free");
  }
  const Grid& g = phi.grid();
  const int steps = options.steps;
  const double dt = config.t_end / steps;
  const eos::EquationOfState eos(phi, config.interpolation);

  PicardRun run;
  run.time_curl_product =
      config.t_end * fields::holder_norm_c0mu(spectral::curl(phi), config.mu).total;
  for (int k = 0; k <= steps; ++k) run.times.push_back(k * dt);
  run.delta.assign(steps + 1, VectorField(g));
  if (options.keep_iterates) run.iterates.push_back(run.delta);

  for (int iter = 0; iter < config.picard_max_iter; ++iter) {
    std::vector<VectorField> u_nodes, u_mid;
    u_nodes.reserve(steps + 1);
    u_mid.reserve(steps);
    for (int k = 0; k <= steps; ++k) u_nodes.push_back(eos.velocity(run.delta[k]));
    for (int k = 0; k < steps; ++k) {
      VectorField mid = run.delta[k];
      mid += run.delta[k + 1];
      mid *= 0.5;
      u_mid.push_back(eos.velocity(mid));
    }
    std::vector<VectorField> next = transport(u_nodes, u_mid, dt);
    const double r = path_distance(next, run.delta, config.mu);
    run.residuals.push_back(r);
    run.delta = std::move(next);
    run.iterations = iter + 1;
    if (options.keep_iterates) run.iterates.push_back(run.delta);
    if (!std::isfinite(r)) {
      throw Error(ErrorKind::kNonFinite, "Picard residual is not finite");
    }
    if (r < config.picard_tol) {
      run.converged = true;
      break;
    }
    if (contraction_stalled(run.residuals)) {
      std::ostringstream os;
      os << "Picard residuals failed to decrease on 3 consecutive iterations (iteration "
         << run.iterations << ", T ||curl phi|| = " << run.time_curl_product << ")";
      throw NoContractionError(os.str(), run.residuals);
    }
  }
  return run;
}

}  // namespace labelflow::evolve
