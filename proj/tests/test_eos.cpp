#include <cmath>
#include <vector>

#include "doctest.h"
#include "labelflow/eos.hpp"
#include "labelflow/error.hpp"
#include "labelflow/evolve.hpp"
#include "labelflow/scenario.hpp"
#include "support.hpp"

using namespace labelflow;
using labelflow::testing::TrigSum;

namespace {

// n_A at three consecutive steps of a run starting at chart birth, and the
// velocity at the middle one.
struct History {
  std::vector<ScalarField> n;
  VectorField u_mid;
};

History steady_history(const VectorField& phi, double dt) {
  evolve::RunConfig cfg;
  cfg.dt_max = dt;
  evolve::ChartState s = evolve::ChartState::birth(phi, 0.0, 0, cfg);
  History h{{}, VectorField(phi.grid())};
  h.n.push_back(s.eos->n_A(s.delta));
  evolve::step_self_consistent(s, dt, cfg);
  h.n.push_back(s.eos->n_A(s.delta));
  h.u_mid = s.u;
  evolve::step_self_consistent(s, dt, cfg);
  h.n.push_back(s.eos->n_A(s.delta));
  return h;
}

}  // namespace

TEST_CASE("velocity at the identity chart") {
  Grid g(16);
  SUBCASE("solenoidal phi is returned") {
    const VectorField phi = testing::random_solenoidal(g, 3, 4);
    const VectorField u = eos::velocity_W({VectorField(g), phi});
    CHECK(sup_norm(u - phi) < 1e-13 * sup_norm(phi));
  }
  SUBCASE("gradient phi is annihilated") {
    const VectorField phi = spectral::gradient(TrigSum(2, 3).sample(g));
    const VectorField u = eos::velocity_W({VectorField(g), phi});
    CHECK(sup_norm(u) < 1e-12 * sup_norm(phi));
  }
}

TEST_CASE("ABC velocity stays put under a short evolution of the map") {
  Grid g(16);
  const VectorField phi = scenario::abc(g, 1.0, 1.0, 1.0);
  evolve::RunConfig cfg;
  cfg.dt_max = 0.01;
  cfg.t_end = 0.05;
  cfg.epsilon_reset = std::numeric_limits<double>::infinity();
  const auto res = evolve::run_continuation(phi, cfg);
  CHECK(sup_norm(res.final_state.delta) > 0.04);
  const VectorField u = eos::velocity_W({res.final_state.delta, phi});
  CHECK(sup_norm(u - phi) < 1e-3);
}

TEST_CASE("velocity gradient from determinants") {
  SUBCASE("identity chart, single mode") {
    Grid g(32);
    const VectorField phi = VectorField::from_function(g, [](double x, double y, double) {
      return Vec3{0.0, 0.0, std::sin(x + 2.0 * y)};
    });
    const VectorField d(g);
    const MatrixField det = eos::velocity_gradient_det({d, phi});
    const MatrixField direct = spectral::jacobian(eos::velocity_W({d, phi}));
    // det(j, i) = du_j/dx_i, the same layout as the Jacobian
    const double rel = testing::relative_l2(det, direct);
    MESSAGE("relative L2 " << rel);
    CHECK(rel < 1e-6);
  }
  SUBCASE("curl-free phi gives zero") {
    Grid g(16);
    const VectorField phi = spectral::gradient(TrigSum(7, 2).sample(g));
    const VectorField d = testing::with_gradient(testing::random_generic(g, 8, 2), 0.3);
    const MatrixField m = eos::velocity_gradient_det({d, phi});
    CHECK(sup_norm(m) < 1e-12 * sup_norm(phi));
  }
  SUBCASE("generic data is traceless and matches the spectral gradient") {
    Grid g(32);
    const VectorField phi = testing::random_solenoidal(g, 11, 2);
    const VectorField d = testing::with_gradient(testing::random_generic(g, 12, 2), 0.3);
    const eos::EquationOfState e(phi);
    const MatrixField m = e.velocity_gradient(d);
    double tr = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p)
      tr = std::max(tr, std::abs(m(0, 0)[p] + m(1, 1)[p] + m(2, 2)[p]));
    MESSAGE("max trace / norm " << tr / sup_norm(m));
    CHECK(tr < 1e-8 * sup_norm(m));
    const double rel = testing::relative_l2(m, spectral::jacobian(e.velocity(d)));
    MESSAGE("relative L2 vs spectral gradient " << rel);
    CHECK(rel < 1e-6);
  }
}

TEST_CASE("n_A") {
  Grid g(16);
  SUBCASE("vanishes at the identity chart for solenoidal phi") {
    const VectorField phi = testing::random_solenoidal(g, 3, 3);
    CHECK(max_abs(eos::solve_n_A({VectorField(g), phi})) < 1e-13);
  }
  SUBCASE("recovers the potential of a gradient phi") {
    const ScalarField f = TrigSum(4, 2).sample(g);
    const VectorField phi = spectral::gradient(f);
    const ScalarField n = eos::solve_n_A({VectorField(g), phi});
    CHECK(max_abs(n - (f - ScalarField(g, mean(f)))) < 1e-12 * max_abs(f));
  }
  SUBCASE("u + grad n_A reproduces the pulled-back velocity") {
    const VectorField phi = testing::random_solenoidal(g, 5, 3);
    const VectorField d = testing::with_gradient(testing::random_generic(g, 6, 2), 0.3);
    const eos::EquationOfState e(phi);
    const VectorField u = e.velocity(d);
    const VectorField rebuilt = u + spectral::gradient(e.n_A(d));
    CHECK(l2_norm(rebuilt - e.pulled_back(d)) < 1e-8 * l2_norm(phi));
  }
}

TEST_CASE("pressure") {
  SUBCASE("zero flow") {
    Grid g(16);
    const std::vector<ScalarField> n(3, ScalarField(g));
    CHECK(max_abs(eos::pressure(n, 0.1, VectorField(g))) == 0.0);
  }
  SUBCASE("Taylor-Green closed form") {
    Grid g(16);
    const VectorField phi = scenario::taylor_green_2d(g);
    const History h = steady_history(phi, 1e-3);
    const ScalarField p = eos::pressure(h.n, 1e-3, h.u_mid);
    const ScalarField expect = ScalarField::from_function(g, [](double x, double y, double) {
      return 0.25 * (std::cos(2.0 * x) + std::cos(2.0 * y));
    });
    MESSAGE("TG pressure error " << max_abs(p - expect));
    CHECK(max_abs(p - expect) < 1e-3);
  }
  SUBCASE("ABC Bernoulli function is constant") {
    Grid g(16);
    const VectorField phi = scenario::abc(g, 1.0, 1.0, 1.0);
    const History h = steady_history(phi, 1e-3);
    const ScalarField p = eos::pressure(h.n, 1e-3, h.u_mid);
    ScalarField bern = p + 0.5 * dot(h.u_mid, h.u_mid);
    bern -= ScalarField(g, mean(bern));
    MESSAGE("ABC Bernoulli variation " << max_abs(bern));
    CHECK(max_abs(bern) < 1e-3);
  }
  SUBCASE("errors") {
    Grid g(16);
    const std::vector<ScalarField> two(2, ScalarField(g));
    const std::vector<ScalarField> three(3, ScalarField(g));
    auto kind = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::kIo;
    };
    CHECK(kind([&] { (void)eos::pressure(two, 0.1, VectorField(g)); }) == ErrorKind::kInsufficientHistory);
    CHECK(kind([&] { (void)eos::pressure(three, 0.0, VectorField(g)); }) == ErrorKind::kBadParameters);
  }
}

TEST_CASE("velocity is linear in phi") {
  Grid g(16);
  const VectorField p1 = testing::random_solenoidal(g, 21, 3);
  const VectorField p2 = testing::random_solenoidal(g, 22, 3);
  const VectorField d = testing::with_gradient(testing::random_generic(g, 23, 2), 0.3);
  const VectorField lhs = eos::velocity_W({d, 2.0 * p1 + (-0.5) * p2});
  const VectorField rhs = 2.0 * eos::velocity_W({d, p1}) + (-0.5) * eos::velocity_W({d, p2});
  CHECK(sup_norm(lhs - rhs) < 1e-12 * sup_norm(rhs));
}

TEST_CASE("velocity is spectrally divergence-free") {
  Grid g(16);
  const VectorField phi = testing::random_solenoidal(g, 31, 3);
  const VectorField d = testing::with_gradient(testing::random_generic(g, 32, 2), 0.4);
  const VectorField u = eos::velocity_W({d, phi});
  CHECK(eos::relative_divergence(u) < 1e-13);
}

TEST_CASE("divergence check on phi") {
  Grid g(16);
  CHECK(eos::relative_divergence(VectorField(g)) == 0.0);
  CHECK(eos::relative_divergence(testing::random_solenoidal(g, 1, 3)) < 1e-14);
  const VectorField bad = testing::random_generic(g, 1, 3);
  CHECK(eos::relative_divergence(bad) > 1e-2);
  try {
    (void)evolve::ChartState::birth(bad, 0.0, 0, evolve::RunConfig{});
    FAIL("expected BadParameters");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBadParameters);
  }
}
