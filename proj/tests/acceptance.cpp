// Acceptance checks. Prints one PASS/FAIL line per criterion and sub-item;
// exits non-zero when any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "labelflow/diagnostics.hpp"
#include "labelflow/driver.hpp"
#include "labelflow/eos.hpp"
#include "labelflow/error.hpp"
#include "labelflow/evolve.hpp"
#include "labelflow/oracle.hpp"
#include "labelflow/picard.hpp"
#include "labelflow/scenario.hpp"
#include "labelflow/spectral.hpp"
#include "support.hpp"

using namespace labelflow;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& what) {
  std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Conservation statistics over the records of one run.
struct Conservation {
  bool first = true;
  diagnostics::DiagnosticsRecord initial;
  double energy = 0.0, helicity = 0.0, det = 0.0, circulation = 0.0, distribution = 0.0;
  double omega_w = 0.0, cauchy = 0.0;
  int records = 0;

  void add(const diagnostics::DiagnosticsRecord& r) {
    ++records;
    if (first) {
      initial = r;
      first = false;
    }
    energy = std::max(energy, std::abs(r.energy - initial.energy) / initial.energy);
    helicity = std::max(helicity, std::abs(r.helicity - initial.helicity) /
                                      std::max(std::abs(initial.helicity), 1e-300));
    det = std::max(det, r.det_error);
    for (std::size_t i = 0; i < r.circulations.size(); ++i)
      circulation = std::max(circulation, std::abs(r.circulations[i] - initial.circulations[i]));
    for (std::size_t i = 0; i < r.distribution_check.size(); ++i)
      distribution = std::max(distribution, std::abs(r.distribution_check[i] - initial.distribution_check[i]) /
                                                std::abs(initial.distribution_check[i]));
    omega_w = std::max(omega_w, r.omega_dot_w_drift);
    cauchy = std::max(cauchy, r.cauchy_residual);
  }
};

void report_conservation(const std::string& id, const Conservation& c, bool with_helicity) {
  report(id + "a", c.energy < 1e-5, fmt("energy drift %.3e (< 1e-5)", c.energy));
  if (with_helicity) report(id + "b", c.helicity < 1e-5, fmt("helicity drift %.3e (< 1e-5)", c.helicity));
  report(id + "c", c.det < 1e-4, fmt("max |det grad A - 1| %.3e (< 1e-4)", c.det));
  report(id + "d", c.circulation < 1e-3, fmt("circulation change %.3e (< 1e-3 absolute, 3 loops)", c.circulation));
  report(id + "e", c.distribution < 1e-5, fmt("test-function integral change %.3e (< 1e-5 relative)", c.distribution));
  report(id + "f", c.omega_w < 1e-3, fmt("omega.w drift %.3e (< 1e-3, 8 psi)", c.omega_w));
}

// Runs with recording every `cadence` steps and at the end; tracks the
// velocity drift from phi and the largest sup |delta| inside a chart.
struct TrackedRun {
  Conservation conservation;
  double drift = 0.0;
  double max_sup_delta = 0.0;
  int charts = 0;
};

TrackedRun tracked_run(const VectorField& phi, const evolve::RunConfig& cfg, int cadence,
                       oracle::OracleState* oracle_state = nullptr, double* compare = nullptr) {
  const Grid& g = phi.grid();
  diagnostics::Recorder recorder(g);
  std::vector<fields::MarkerLoop> loops = driver::default_loops(g, 64);
  TrackedRun out;
  int step = 0;
  {
    const evolve::ChartState birth = evolve::ChartState::birth(phi, 0.0, 0, cfg);
    out.conservation.add(recorder.record(birth, loops));
  }
  evolve::StepObserver obs;
  obs.on_step = [&](const evolve::ChartState& s, const evolve::StageVelocities& stages, double dt) {
    ++step;
    driver::advect_markers(loops, stages, dt);
    out.drift = std::max(out.drift, sup_norm(s.u - phi));
    out.max_sup_delta = std::max(out.max_sup_delta, sup_norm(s.delta));
    if (oracle_state) {
      oracle::oracle_step(*oracle_state, dt, 1.0);
      oracle_state->t = s.t_now;
    }
    if (step % cadence == 0 || s.t_now >= cfg.t_end) out.conservation.add(recorder.record(s, loops));
  };
  auto res = evolve::run_continuation(phi, cfg, obs);
  out.charts = static_cast<int>(res.charts.size());
  if (oracle_state && compare) *compare = oracle::compare(res.final_state, *oracle_state);
  return out;
}

void criterion1() {
  Stopwatch sw;
  Grid g(32);
  double worst = 0.0, worst_grad = 0.0;
  for (int k = 0; k < 20; ++k) {
    const VectorField phi = testing::random_solenoidal(g, 1000 + k, 2);
    const VectorField d = testing::with_gradient(testing::random_generic(g, 2000 + k, 2), 0.3);
    worst_grad = std::max(worst_grad, sup_norm(spectral::jacobian(d)));
    const eos::EquationOfState e(phi);
    const MatrixField det = e.velocity_gradient(d);
    const MatrixField direct = spectral::jacobian(e.velocity(d));
    worst = std::max(worst, testing::relative_l2(det, direct));
  }
  report("1", worst < 1e-6 && worst_grad <= 0.3 + 1e-12,
         fmt("determinant velocity gradient vs spectral gradient: max rel L2 %.3e over 20 pairs, "
             "sup|grad delta| %.3f (< 1e-6, %.1fs)",
             worst, worst_grad, sw.seconds()));
}

void criteria2_4_5() {
  Grid g(32);
  evolve::RunConfig cfg;
  cfg.dt_max = 1e-3;
  cfg.t_end = 0.5;
  cfg.epsilon_reset = 0.25;
  {
    Stopwatch sw;
    const VectorField phi = scenario::abc(g, 1.0, 1.0, 1.0);
    const TrackedRun r = tracked_run(phi, cfg, 25);
    report("2a", r.drift < 1e-3 && r.max_sup_delta > 0.05,
           fmt("ABC: drift %.3e (< 1e-3), max sup|delta| %.3f (> 0.05), %d charts, %.0fs", r.drift,
               r.max_sup_delta, r.charts, sw.seconds()));
    report_conservation("4.abc.", r.conservation, true);
    report("5a", r.conservation.cauchy < 1e-3,
           fmt("ABC Cauchy residual %.3e (< 1e-3, %d records)", r.conservation.cauchy, r.conservation.records));
  }
  {
    Stopwatch sw;
    const VectorField phi = scenario::taylor_green_2d(g);
    const TrackedRun r = tracked_run(phi, cfg, 25);
    report("2b", r.drift < 1e-4 && r.max_sup_delta > 0.05,
           fmt("Taylor-Green: drift %.3e (< 1e-4), max sup|delta| %.3f (> 0.05), %d charts, %.0fs", r.drift,
               r.max_sup_delta, r.charts, sw.seconds()));
    report_conservation("4.tg.", r.conservation, false);
    report("5b", r.conservation.cauchy < 1e-3,
           fmt("Taylor-Green Cauchy residual %.3e (< 1e-3, %d records)", r.conservation.cauchy,
               r.conservation.records));
  }
}

void criteria3_4() {
  Grid g(64);
  scenario::Scenario sc;
  sc.name = "random_bandlimited";
  sc.two_dimensional = true;
  sc.k_cut = 4;
  sc.seed = 3;
  const VectorField phi = scenario::generate_ic(sc, g);
  double previous = kInf;
  bool decreasing = true, small = true;
  std::string detail;
  for (double dt : {0.02, 0.01}) {
    Stopwatch sw;
    evolve::RunConfig cfg;
    cfg.dt_max = dt;
    cfg.cfl = 1.0;
    cfg.t_end = 0.5;
    oracle::OracleState o{phi, 0.0};
    double cmp = 0.0;
    const TrackedRun r = tracked_run(phi, cfg, static_cast<int>(std::lround(0.1 / dt)), &o, &cmp);
    small = small && cmp < 1e-3;
    decreasing = decreasing && cmp < previous;
    previous = cmp;
    detail += fmt("dt %.3g: %.3e (%d charts, %.0fs); ", dt, cmp, r.charts, sw.seconds());
    report_conservation(fmt("4.random2d.dt%g.", dt), r.conservation, false);
  }
  report("3", small && decreasing,
         "active-vector vs oracle rel L2 at t = 0.5, N = 64: " + detail + "(< 1e-3, decreasing)");
}

void criterion6() {
  Stopwatch sw;
  Grid g(32);
  auto make_phi = [&](std::uint64_t seed, double amplitude) {
    scenario::Scenario sc;
    sc.name = "random_bandlimited";
    sc.k_cut = 4;
    sc.seed = seed;
    sc.normalization = scenario::Normalization::kCurlHolder;
    sc.amplitude = amplitude;
    return scenario::generate_ic(sc, g);
  };
  const double T = 0.05;
  evolve::RunConfig cfg;
  cfg.t_end = T;
  cfg.cfl = 1.0;
  cfg.picard_tol = 1e-13;
  cfg.picard_max_iter = 12;
  cfg.dt_max = T / 5;

  double worst_ratio = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto run = evolve::picard_solve(make_phi(seed, 1.0), cfg, {10, false});
    for (std::size_t i = 2; i < run.residuals.size(); ++i)
      if (run.residuals[i - 1] > 1e-12) worst_ratio = std::max(worst_ratio, run.residuals[i] / run.residuals[i - 1]);
  }
  report("6a", worst_ratio < 0.9,
         fmt("Picard residual ratio after iteration 2: max %.3e over 3 seeds (< 0.9)", worst_ratio));

  const VectorField phi = make_phi(1, 1.0);
  std::vector<double> gaps;
  std::string detail;
  for (int steps : {5, 10, 20}) {
    const auto run = evolve::picard_solve(phi, cfg, {steps, false});
    evolve::RunConfig direct = cfg;
    direct.epsilon_reset = kInf;
    evolve::ChartState s = evolve::ChartState::birth(phi, 0.0, 0, direct);
    for (int k = 0; k < steps; ++k) evolve::step_self_consistent(s, T / steps, direct);
    gaps.push_back(sup_norm(s.delta - run.delta.back()));
    detail += fmt("%d steps %.3e; ", steps, gaps.back());
  }
  report("6b", gaps.back() < 1e-4 && gaps.back() <= gaps.front(),
         "fixed point vs direct stepping at t = T: " + detail + "(< 1e-4)");

  // T ||curl phi||_{0,mu} = 2
  int fired = 0;
  std::string ratios;
  evolve::RunConfig strong = cfg;
  strong.picard_max_iter = 10;
  strong.picard_tol = 1e-300;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    try {
      const auto run = evolve::picard_solve(make_phi(seed, 2.0 / T), strong, {20, false});
      double worst = 0.0;
      for (std::size_t i = 1; i < run.residuals.size(); ++i)
        if (run.residuals[i - 1] > 0.0) worst = std::max(worst, run.residuals[i] / run.residuals[i - 1]);
      ratios += fmt("seed %d max ratio %.3f; ", static_cast<int>(seed), worst);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNoContraction) throw;
      ++fired;
      ratios += fmt("seed %d NoContraction; ", static_cast<int>(seed));
    }
  }
  report("6c", fired > 0,
         fmt("NoContraction at T||curl phi|| = 2 fired on %d of 4 seeds: ", fired) + ratios +
             fmt("(%.0fs)", sw.seconds()));
}

void criterion7() {
  Stopwatch sw;
  Grid g(32);
  // chart state of an evolved, resolved 3D flow
  evolve::RunConfig cfg;
  cfg.dt_max = 0.01;
  cfg.t_end = 0.2;
  const VectorField phi = testing::random_solenoidal(g, 77, 2);
  const evolve::ChartState s = evolve::run_continuation(phi, cfg).final_state;
  const ScalarField det = diagnostics::det_grad_A(s.delta);
  std::printf("INFO 7 snapshot: t = %.2f, chart %d, sup|grad delta| %.3f, max|det - 1| %.2e\n", s.t_now,
              s.chart_index, sup_norm(spectral::jacobian(s.delta)), max_abs(det - ScalarField(g, 1.0)));

  const diagnostics::Calibrator cal = diagnostics::calibrator(s.delta, {{0, 0, 0}}, 1);
  report("7a", cal.summary < 1e-14, fmt("calibrator at z = 0: max |C - I| %.3e (< 1e-14)", cal.summary));

  const MatrixField inv = diagnostics::inverse_grad_A(s.delta);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, max_abs(diagnostics::label_coordinate(s.delta, i, j) - inv(i, j)));
  report("7b", worst < 1e-6, fmt("L_j[x_i] vs (grad A)^-1: max %.3e (< 1e-6)", worst));

  const VectorField combo = diagnostics::vorticity_from_determinants(*s.eos, s.delta);
  const double rel = testing::relative_l2(combo, diagnostics::cauchy_vorticity(*s.eos, s.delta));
  report("7c", rel < 1e-6, fmt("vorticity from determinants vs Cauchy formula: rel L2 %.3e (< 1e-6)", rel));

  const VectorField phi2 = testing::random_solenoidal(g, 78, 3, true);
  const VectorField u2 = evolve::run_continuation(phi2, cfg).final_state.u;
  const double alpha = max_abs(diagnostics::stretching_alpha(u2, spectral::curl(u2)));
  report("7d", alpha < 1e-8, fmt("stretching factor on 2D flow: max |alpha| %.3e (< 1e-8, %.0fs)", alpha, sw.seconds()));
}

double steadiness_drift(int n, int wavenumber, double dt, double t_end) {
  Grid g(n);
  const VectorField phi = scenario::abc(g, 1.0, 1.0, 1.0, wavenumber);
  evolve::RunConfig cfg;
  cfg.dt_max = dt;
  cfg.t_end = t_end;
  cfg.cfl = 1.0;
  cfg.epsilon_reset = kInf;
  return sup_norm(evolve::run_continuation(phi, cfg).final_state.u - phi);
}

void criterion8() {
  Stopwatch sw;
  const double coarse = steadiness_drift(32, 1, 0.04, 0.48);
  const double fine = steadiness_drift(32, 1, 0.02, 0.48);
  const double ratio = coarse / fine;
  report("8a", ratio > 13.0 && ratio < 19.0,
         fmt("RK4 order on ABC steadiness drift: %.3e -> %.3e, ratio %.2f (13..19, %.0fs)", coarse, fine, ratio,
             sw.seconds()));
  Stopwatch sw2;
  const double n32 = steadiness_drift(32, 2, 0.005, 0.25);
  const double n64 = steadiness_drift(64, 2, 0.005, 0.25);
  report("8b", n32 / n64 > 1e2,
         fmt("spatial convergence on ABC (wavenumber 2) steadiness drift: N=32 %.3e -> N=64 %.3e, drop %.3g "
             "(> 1e2, %.0fs)",
             n32, n64, n32 / n64, sw2.seconds()));
}

}  // namespace

// Optional arguments select criteria by number: acceptance 6 7
int main(int argc, char** argv) {
  Stopwatch total;
  auto wanted = [&](const char* id) {
    if (argc < 2) return true;
    for (int i = 1; i < argc; ++i)
      if (std::string(argv[i]) == id) return true;
    return false;
  };
  try {
    if (wanted("1")) criterion1();
    if (wanted("2")) criteria2_4_5();
    if (wanted("3")) criteria3_4();
    if (wanted("6")) criterion6();
    if (wanted("7")) criterion7();
    if (wanted("8")) criterion8();
  } catch (const std::exception& e) {
    std::printf("FAIL error %s\n", e.what());
    ++failures;
  }
  std::printf("%d failing line(s), %.0fs\n", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
