#pragma once

#include "labelflow/evolve.hpp"
#include "labelflow/field.hpp"

namespace labelflow::oracle {

/// Velocity-form Euler state for the reference solver.
struct OracleState {
  VectorField u;
  double t = 0.0;
};

/// P(u x omega), dealiased, omega = curl u spectrally.
VectorField rotational_rhs(const VectorField& u);

/// One RK4 step of du/dt = P(u x omega). Throws CflViolation when
/// dt > cfl h / max|u| and NonFinite on overflow.
void oracle_step(OracleState& state, double dt, double cfl = 1.0);

/// Relative L2 distance between the chart's velocity and the oracle's.
/// Throws GridMismatch for different grids and BadParameters for
/// different times.
double compare(const evolve::ChartState& active, const OracleState& oracle);

}  // namespace labelflow::oracle
