#include "labelflow/driver.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "labelflow/diagnostics.hpp"
#include "labelflow/error.hpp"
#include "labelflow/evolve.hpp"
#include "labelflow/oracle.hpp"
#include "labelflow/output.hpp"
#include "labelflow/picard.hpp"
#include "labelflow/scenario.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::driver {
namespace {

// Markers are advected with velocities on the original grid; no refinement.
constexpr fields::InterpolationScheme kMarkerScheme{8, 1};

std::vector<double> record_row(int step, double dt, const diagnostics::DiagnosticsRecord& r) {
  std::vector<double> row = {static_cast<double>(step), r.t, dt, static_cast<double>(r.chart_index),
                             r.energy, r.helicity, r.sup_vorticity, r.bkm_integral, r.det_error,
                             r.holder_grad_delta, r.sup_delta, r.cauchy_residual,
                             r.omega_dot_w_drift};
  for (int i = 0; i < output::kDefaultLoops; ++i)
    row.push_back(i < static_cast<int>(r.circulations.size()) ? r.circulations[i] : NAN);
  for (int i = 0; i < 8; ++i)
    row.push_back(i < static_cast<int>(r.distribution_check.size()) ? r.distribution_check[i] : NAN);
  return row;
}

std::string context(int chart, double t) {
  std::ostringstream os;
  os << "chart " << chart << ", t = " << t << ": ";
  return os.str();
}

RunSummary run_picard(const config::Config& cfg, const VectorField& phi, std::ostream* log) {
  output::CsvWriter csv(cfg.output.diagnostics_csv, output::csv_columns(cfg.mode));
  RunSummary summary;
  summary.mode = cfg.mode;
  auto write = [&](const std::vector<double>& residuals, double product) {
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      const double ratio = i ? residuals[i] / residuals[i - 1] : NAN;
      csv.write_row({static_cast<double>(i + 1), residuals[i], ratio, cfg.run.t_end, product});
    }
    csv.flush();
    summary.rows = static_cast<int>(residuals.size());
  };
  const double product = cfg.run.t_end *
                         fields::holder_norm_c0mu(spectral::curl(phi), cfg.run.mu).total;
  summary.time_curl_product = product;
  const double bound = cfg.run.picard_c * cfg.run.epsilon_reset;
  if (log && product > bound) {
    *log << "note: T ||curl phi|| = " << product << " exceeds c epsilon = " << bound << "\n";
  }
  try {
    const auto run = evolve::picard_solve(phi, cfg.run, {cfg.picard_steps, false});
    write(run.residuals, product);
    summary.residuals = run.residuals;
    summary.converged = run.converged;
    summary.t_final = cfg.run.t_end;
    summary.steps = cfg.picard_steps;
  } catch (const NoContractionError& e) {
    write(e.residuals(), product);
    throw;
  }
  if (log) {
    *log << "picard: " << summary.residuals.size() << " iterations, "
         << (summary.converged ? "converged" : "not converged") << ", last residual "
         << (summary.residuals.empty() ? 0.0 : summary.residuals.back()) << "\n";
  }
  return summary;
}

}  // namespace

void advect_markers(std::vector<fields::MarkerLoop>& loops,
                    const evolve::StageVelocities& stages, double dt) {
  const fields::FieldSampler s1(stages.u[0], kMarkerScheme), s2(stages.u[1], kMarkerScheme),
      s3(stages.u[2], kMarkerScheme), s4(stages.u[3], kMarkerScheme);
  const double period = stages.u[0].grid().length();
  for (auto& loop : loops)
    for (auto& x : loop.points) {
      Vec3 k1, k2, k3, k4, y;
      s1.sample(x, k1);
      for (int c = 0; c < 3; ++c) y[c] = x[c] + 0.5 * dt * k1[c];
      s2.sample(y, k2);
      for (int c = 0; c < 3; ++c) y[c] = x[c] + 0.5 * dt * k2[c];
      s3.sample(y, k3);
      for (int c = 0; c < 3; ++c) y[c] = x[c] + dt * k3[c];
      s4.sample(y, k4);
      for (int c = 0; c < 3; ++c) {
        x[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        x[c] -= period * std::floor(x[c] / period);
      }
    }
}

std::vector<fields::MarkerLoop> default_loops(const Grid& grid, int markers) {
  const double L = grid.length();
  const Vec3 centre{L / 2, L / 2, L / 2};
  std::vector<fields::MarkerLoop> loops;
  for (int axis = 0; axis < output::kDefaultLoops; ++axis)
    loops.push_back(fields::circle_loop(centre, L / 4, axis, markers));
  return loops;
}

RunSummary run(const config::Config& cfg, std::ostream* log) {
  const Grid grid(cfg.n, cfg.length);
  const VectorField phi = scenario::generate_ic(cfg.ic, grid);
  if (cfg.mode == config::Mode::kPicard) return run_picard(cfg, phi, log);

  const bool with_oracle = cfg.mode == config::Mode::kOracleCompare;
  output::CsvWriter csv(cfg.output.diagnostics_csv, output::csv_columns(cfg.mode));
  diagnostics::Recorder recorder(grid);
  std::vector<fields::MarkerLoop> loops = default_loops(grid, cfg.loop_markers);
  oracle::OracleState oracle_state{phi, 0.0};

  RunSummary summary;
  summary.mode = cfg.mode;
  int step = 0;
  double last_compare = 0.0;
  bool last_row_written = false;

  auto emit = [&](const evolve::ChartState& s, double dt) {
    std::vector<double> row = record_row(step, dt, recorder.record(s, loops));
    if (with_oracle) {
      row.push_back(integral(dot(oracle_state.u, oracle_state.u)));
      row.push_back(last_compare);
    }
    csv.write_row(row);
    ++summary.rows;
  };
  auto snapshot = [&](const evolve::ChartState& s) {
    for (const auto& f : cfg.output.fields) {
      std::ostringstream stem;
      stem << f << "_" << step;
      if (f == "u") output::write_snapshot(cfg.output.snapshot_dir, stem.str(), f, s.u, s.t_now, s.chart_index);
      else if (f == "delta") output::write_snapshot(cfg.output.snapshot_dir, stem.str(), f, s.delta, s.t_now, s.chart_index);
      else if (f == "phi") output::write_snapshot(cfg.output.snapshot_dir, stem.str(), f, s.phi(), s.t_now, s.chart_index);
      else if (f == "omega") output::write_snapshot(cfg.output.snapshot_dir, stem.str(), f, spectral::curl(s.u), s.t_now, s.chart_index);
      else if (f == "n_A") output::write_snapshot(cfg.output.snapshot_dir, stem.str(), f, s.eos->n_A(s.delta), s.t_now, s.chart_index);
      ++summary.snapshots;
    }
  };

  evolve::StepObserver observer;
  observer.on_step = [&](const evolve::ChartState& s, const evolve::StageVelocities& stages,
                         double dt) {
    ++step;
    advect_markers(loops, stages, dt);
    if (with_oracle) {
      oracle::oracle_step(oracle_state, dt, 1.0);
      oracle_state.t = s.t_now;
      last_compare = oracle::compare(s, oracle_state);
    }
    const bool last = s.t_now >= cfg.run.t_end;
    last_row_written = step % cfg.output.diagnostics_cadence == 0 || last;
    if (last_row_written) emit(s, dt);
    if (!cfg.output.fields.empty() && (step % cfg.output.snapshot_cadence == 0 || last)) snapshot(s);
    if (log && last_row_written) {
      *log << "step " << step << "  t = " << s.t_now << "  chart " << s.chart_index;
      if (with_oracle) *log << "  compare " << last_compare;
      *log << "\n";
    }
  };
  if (log) {
    observer.on_reset = [&](const evolve::ChartState& before, const evolve::ChartState& after) {
      *log << "reset at t = " << before.t_now << " -> chart " << after.chart_index << "\n";
    };
  }

  {
    // Row for the initial state.
    evolve::ChartState initial = evolve::ChartState::birth(phi, 0.0, 0, cfg.run);
    emit(initial, 0.0);
    if (!cfg.output.fields.empty()) snapshot(initial);
  }

  int chart = 0;
  double t = 0.0;
  evolve::StepObserver tracked = observer;
  tracked.on_step = [&](const evolve::ChartState& s, const evolve::StageVelocities& st, double dt) {
    chart = s.chart_index;
    t = s.t_now;
    observer.on_step(s, st, dt);
  };
  try {
    const auto result = evolve::run_continuation(phi, cfg.run, tracked);
    summary.charts = static_cast<int>(result.charts.size());
    summary.c_observed = result.c_observed;
    summary.k_observed = result.k_observed;
    summary.t_final = result.final_state.t_now;
  } catch (const NoContractionError&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), context(chart, t) + e.what());
  }
  csv.flush();
  summary.steps = step;
  summary.final_compare = last_compare;
  return summary;
}

}  // namespace labelflow::driver
