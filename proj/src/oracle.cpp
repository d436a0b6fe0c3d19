#include "labelflow/oracle.hpp"

#include <cmath>
#include <sstream>

#include "labelflow/error.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::oracle {

VectorField rotational_rhs(const VectorField& u) {
  const VectorField w = spectral::curl(u);
  const std::size_t size = u.grid().size();
  VectorField c(u.grid());
  for (std::size_t i = 0; i < size; ++i) {
    c[0][i] = u[1][i] * w[2][i] - u[2][i] * w[1][i];
    c[1][i] = u[2][i] * w[0][i] - u[0][i] * w[2][i];
    c[2][i] = u[0][i] * w[1][i] - u[1][i] * w[0][i];
  }
  return spectral::inverse(spectral::leray_project(spectral::dealias(spectral::forward(c))));
}

void oracle_step(OracleState& state, double dt, double cfl) {
  if (!all_finite(state.u)) {
    std::ostringstream os;
    os << "oracle velocity is not finite at t = " << state.t;
    throw Error(ErrorKind::kNonFinite, os.str());
  }
  const double umax = sup_norm(state.u);
  const double limit = umax > 0.0 ? cfl * state.u.grid().spacing() / umax : INFINITY;
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "oracle time step " << dt << " exceeds stable bound " << limit << " at t = "
       << state.t;
    throw Error(ErrorKind::kCflViolation, os.str());
  }
  const VectorField& u0 = state.u;
  const VectorField k1 = rotational_rhs(u0);
  VectorField v = u0;
  v.axpy(0.5 * dt, k1);
  const VectorField k2 = rotational_rhs(v);
  v = u0;
  v.axpy(0.5 * dt, k2);
  const VectorField k3 = rotational_rhs(v);
  v = u0;
  v.axpy(dt, k3);
  const VectorField k4 = rotational_rhs(v);
  VectorField next = u0;
  next.axpy(dt / 6.0, k1);
  next.axpy(dt / 3.0, k2);
  next.axpy(dt / 3.0, k3);
  next.axpy(dt / 6.0, k4);
  if (!all_finite(next)) {
    std::ostringstream os;
    os << "oracle velocity left the finite range at t = " << state.t;
    throw Error(ErrorKind::kNonFinite, os.str());
  }
  state.u = std::move(next);
  state.t += dt;
}

double compare(const evolve::ChartState& active, const OracleState& oracle) {
  require_same_grid(active.grid(), oracle.u.grid(), "compare");
  if (std::abs(active.t_now - oracle.t) > 1e-9 * std::max(1.0, std::abs(oracle.t))) {
    std::ostringstream os;
    os << "compare: states are at different times (" << active.t_now << " vs " << oracle.t
       << ")";
    throw Error(ErrorKind::kBadParameters, os.str());
  }
  const double ref = l2_norm(oracle.u);
  const double diff = l2_norm(active.u - oracle.u);
  if (ref == 0.0) return diff;
  return diff / ref;
}

}  // namespace labelflow::oracle
