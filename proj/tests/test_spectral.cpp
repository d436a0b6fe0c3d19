#include <cmath>
#include <numbers>

#include "doctest.h"
#include "labelflow/error.hpp"
#include "labelflow/interpolation.hpp"
#include "support.hpp"

using namespace labelflow;
using labelflow::testing::TrigSum;

namespace {

constexpr double kPi = std::numbers::pi;

// Fourth-order centred difference along `axis`.
ScalarField fd4(const ScalarField& f, int axis) {
  const Grid& g = f.grid();
  const int n = g.n();
  const double h = g.spacing();
  ScalarField out(g);
  auto at = [&](int i, int j, int k, int s) {
    int idx[3] = {i, j, k};
    idx[axis] = ((idx[axis] + s) % n + n) % n;
    return f.at(idx[0], idx[1], idx[2]);
  };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out.at(i, j, k) = (-at(i, j, k, 2) + 8.0 * at(i, j, k, 1) - 8.0 * at(i, j, k, -1) +
                           at(i, j, k, -2)) / (12.0 * h);
  return out;
}

double fd4_error(int n, const TrigSum& f) {
  Grid g(n);
  const ScalarField s = f.sample(g);
  const VectorField exact = spectral::gradient(s);
  double err = 0.0;
  for (int a = 0; a < 3; ++a) err = std::max(err, max_abs(fd4(s, a) - exact[a]));
  return err;
}

}  // namespace

TEST_CASE("gradient of a single sine mode") {
  for (double length : {2.0 * kPi, 3.0}) {
    Grid g(16, length);
    const double k = 2.0 * kPi / length;
    const ScalarField f = ScalarField::from_function(g, [&](double x, double, double) { return std::sin(k * x); });
    const VectorField gr = spectral::gradient(f);
    const ScalarField expect = ScalarField::from_function(g, [&](double x, double, double) { return k * std::cos(k * x); });
    CHECK(max_abs(gr[0] - expect) < 1e-12);
    CHECK(max_abs(gr[1]) < 1e-13);
    CHECK(max_abs(gr[2]) < 1e-13);
  }
}

TEST_CASE("gradient of a constant vanishes") {
  Grid g(16);
  const VectorField gr = spectral::gradient(ScalarField(g, 3.5));
  CHECK(sup_norm(gr) < 1e-14);
}

TEST_CASE("spectral gradient agrees with fourth-order differences at O(h^4)") {
  const TrigSum f(11, 2);
  const double e16 = fd4_error(16, f);
  const double e32 = fd4_error(32, f);
  MESSAGE("fd4 error n=16 " << e16 << ", n=32 " << e32);
  CHECK(e32 < e16);
  CHECK(e16 / e32 > 12.0);
  CHECK(e16 / e32 < 20.0);
}

TEST_CASE("spectral gradient matches the analytic derivative of a trigonometric sum") {
  Grid g(16);
  const TrigSum f(3, 2);
  const VectorField gr = spectral::gradient(f.sample(g));
  for (int a = 0; a < 3; ++a) {
    const ScalarField exact = ScalarField::from_function(
        g, [&](double x, double y, double z) { return f.derivative(x, y, z, a); });
    CHECK(max_abs(gr[a] - exact) < 1e-11 * max_abs(exact));
  }
}

TEST_CASE("inverse Laplacian") {
  Grid g(16);
  const double k = 1.0;
  SUBCASE("eigenfunction") {
    const ScalarField f = ScalarField::from_function(g, [&](double x, double, double) { return -k * k * std::sin(k * x); });
    const ScalarField u = spectral::inverse(spectral::inverse_laplacian(spectral::forward(f)));
    const ScalarField expect = ScalarField::from_function(g, [&](double x, double, double) { return std::sin(k * x); });
    CHECK(max_abs(u - expect) < 1e-13);
  }
  SUBCASE("zero") {
    const ScalarField u = spectral::inverse(spectral::inverse_laplacian(spectral::forward(ScalarField(g))));
    CHECK(max_abs(u) == 0.0);
  }
  SUBCASE("round trip and zero mean") {
    const ScalarField f = TrigSum(5, 3).sample(g);
    const SpectralField sol = spectral::inverse_laplacian(spectral::forward(f));
    CHECK(std::abs(sol[0]) == 0.0);
    const ScalarField back = spectral::inverse(spectral::laplacian(sol));
    CHECK(max_abs(back - f) < 1e-12 * max_abs(f));
  }
  SUBCASE("non-zero mean is rejected") {
    const ScalarField f = TrigSum(5, 2).sample(g) + ScalarField(g, 0.5);
    try {
      (void)spectral::inverse_laplacian(spectral::forward(f));
      FAIL("expected NonZeroMean");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kNonZeroMean);
    }
  }
}

TEST_CASE("Leray projection") {
  Grid g(16);
  const ScalarField f = TrigSum(21, 3).sample(g);
  const VectorField grad_f = spectral::gradient(f);
  const VectorField w = testing::random_solenoidal(g, 4, 4);

  SUBCASE("annihilates gradients") {
    CHECK(sup_norm(spectral::leray_project(grad_f)) < 1e-12 * sup_norm(grad_f));
  }
  SUBCASE("leaves solenoidal fields unchanged") {
    CHECK(sup_norm(spectral::leray_project(w) - w) < 1e-13 * sup_norm(w));
  }
  SUBCASE("Helmholtz decomposition") {
    const VectorField v = grad_f + w;
    const VectorField pv = spectral::leray_project(v);
    CHECK(sup_norm(pv - w) < 1e-12 * sup_norm(v));
    // gradient . inverse Laplacian . divergence recovers the gradient part
    const SpectralField phi = spectral::inverse_laplacian(spectral::divergence(spectral::forward(v)));
    const VectorField gp = spectral::inverse(spectral::gradient(phi));
    CHECK(sup_norm(gp - grad_f) < 1e-12 * sup_norm(v));
  }
  SUBCASE("divergence of the projection and idempotence") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const VectorField v = testing::random_generic(g, seed, 5);
      const SpectralVector pv = spectral::leray_project(spectral::forward(v));
      const double vnorm = std::max({spectral::max_norm(spectral::forward(v[0])),
                                     spectral::max_norm(spectral::forward(v[1])),
                                     spectral::max_norm(spectral::forward(v[2]))});
      CHECK(spectral::max_norm(spectral::divergence(pv)) < 1e-12 * vnorm);
      const SpectralVector ppv = spectral::leray_project(pv);
      for (int c = 0; c < 3; ++c) {
        SpectralField d = ppv[c];
        d -= pv[c];
        CHECK(spectral::max_norm(d) < 1e-15 * vnorm + 1e-300);
      }
    }
  }
  SUBCASE("mean flow passes through") {
    VectorField v = w;
    v[0] += ScalarField(g, 0.75);
    const VectorField pv = spectral::leray_project(v);
    CHECK(std::abs(mean(pv[0]) - 0.75) < 1e-14);
  }
}

TEST_CASE("dealiasing") {
  Grid g(32);
  SUBCASE("band-limited fields are unchanged") {
    const ScalarField f = TrigSum(8, 3).sample(g);
    CHECK(max_abs(spectral::dealias(f) - f) < 1e-13 * max_abs(f));
  }
  SUBCASE("highest mode is removed") {
    const ScalarField f = ScalarField::from_function(g, [](double x, double y, double) {
      return std::cos(16.0 * x) + std::sin(15.0 * y) + std::cos(11.0 * y);
    });
    CHECK(max_abs(spectral::dealias(f)) < 1e-13);
  }
  SUBCASE("dealiased product equals the truncated continuum product") {
    // Factors fill the band |m| <= 10; the exact product is formed on a grid
    // fine enough to hold modes up to 20 without aliasing.
    const int band = 10;
    auto fill = [&](std::uint64_t seed) {
      SpectralField s = spectral::forward(TrigSum(seed, 1).sample(g));
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      spectral::for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        if (spectral::in_band(mx, my, mz, g.n()) && (std::abs(mx) == band || std::abs(my) == band))
          s[idx] = {normal(rng), normal(rng)};
      });
      return spectral::inverse(s);
    };
    const ScalarField a = spectral::dealias(fill(1));
    const ScalarField b = spectral::dealias(fill(2));
    const ScalarField got = spectral::dealiased_product(a, b);

    const ScalarField fa = fields::refine(a, 2);
    const ScalarField fb = fields::refine(b, 2);
    const SpectralField fine = spectral::forward(multiply(fa, fb));
    const Grid& gf = fine.grid();
    SpectralField coarse = spectral::forward(got);
    double err = 0.0, scale = 0.0;
    spectral::for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
      const auto wrap = [&](int m) { return m < 0 ? m + gf.n() : m; };
      const std::complex<double> expect =
          spectral::in_band(mx, my, mz, g.n()) ? fine[gf.spectral_index(mx, wrap(my), wrap(mz))]
                                               : std::complex<double>(0.0, 0.0);
      err = std::max(err, std::abs(coarse[idx] - expect));
      scale = std::max(scale, std::abs(expect));
    });
    MESSAGE("product coefficient error " << err << " of " << scale);
    CHECK(err < 1e-12 * scale);
  }
}

TEST_CASE("Parseval") {
  Grid g(16, 3.0);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ScalarField f = TrigSum(seed, 3, 3.0).sample(g);
    const double real = l2_norm(f);
    const double spec = spectral::l2_norm(spectral::forward(f));
    CHECK(std::abs(real - spec) < 1e-12 * real);
  }
}
