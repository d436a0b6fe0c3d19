#include "labelflow/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "labelflow/error.hpp"
#include "labelflow/holder.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::scenario {
namespace {

VectorField clean(const VectorField& v) {
  return spectral::inverse(spectral::leray_project(spectral::dealias(spectral::forward(v))));
}

}  // namespace

VectorField abc(const Grid& grid, double a, double b, double c, int wavenumber) {
  if (wavenumber < 1 || 3 * wavenumber > grid.n()) {
    throw Error(ErrorKind::kBadParameters,
                "abc: wavenumber must be in [1, n/3], got " + std::to_string(wavenumber));
  }
  const double k = grid.base_wavenumber() * wavenumber;
  return VectorField::from_function(grid, [=](double x, double y, double z) {
    return Vec3{a * std::sin(k * z) + c * std::cos(k * y),
                b * std::sin(k * x) + a * std::cos(k * z),
                c * std::sin(k * y) + b * std::cos(k * x)};
  });
}

VectorField taylor_green_2d(const Grid& grid, double amplitude) {
  const double k = grid.base_wavenumber();
  return VectorField::from_function(grid, [=](double x, double y, double) {
    return Vec3{amplitude * std::sin(k * x) * std::cos(k * y),
                -amplitude * std::cos(k * x) * std::sin(k * y), 0.0};
  });
}

VectorField random_bandlimited(const Grid& grid, const Scenario& s) {
  if (s.k_cut < 1 || 3 * s.k_cut > grid.n()) {
    throw Error(ErrorKind::kBadParameters,
                "random_bandlimited: k_cut must be in [1, n/3], got " + std::to_string(s.k_cut));
  }
  if (!(s.amplitude >= 0.0)) {
    throw Error(ErrorKind::kBadParameters, "random_bandlimited: amplitude must be >= 0");
  }
  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = grid.n();
  const int kc = s.k_cut;
  SpectralVector coeff{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
  // Draw in a fixed order over the full cube of modes so the field depends
  // only on the seed, then keep the half stored by the transform.
  for (int mz = -kc; mz <= kc; ++mz)
    for (int my = -kc; my <= kc; ++my)
      for (int mx = -kc; mx <= kc; ++mx) {
        double draws[6];
        for (double& d : draws) d = gauss(rng);
        const double kk = std::sqrt(double(mx * mx + my * my + mz * mz));
        if (kk == 0.0 || kk > kc || mx < 0) continue;
        if (s.two_dimensional && mz != 0) continue;
        const double amp = std::pow(kk, -s.spectrum_exponent);
        const std::size_t idx =
            grid.spectral_index(mx, (my + n) % n, (mz + n) % n);
        for (int c = 0; c < 3; ++c) {
          if (s.two_dimensional && c == 2) continue;
          coeff[c][idx] = amp * std::complex<double>(draws[2 * c], draws[2 * c + 1]);
        }
      }
  // The round trip through real space enforces conjugate symmetry on kx = 0.
  VectorField v = clean(spectral::inverse(coeff));
  double scale = 1.0;
  if (s.normalization == Normalization::kRms) {
    const double rms = l2_norm(v) / std::sqrt(grid.volume());
    scale = rms > 0.0 ? s.amplitude / rms : 0.0;
  } else {
    const double h = fields::holder_norm_c0mu(spectral::curl(v), s.mu).total;
    scale = h > 0.0 ? s.amplitude / h : 0.0;
  }
  v *= scale;
  return v;
}

VectorField shear_layer_2d(const Grid& grid, double thickness, double perturbation,
                           double amplitude) {
  if (!(thickness > 0.0)) {
    throw Error(ErrorKind::kBadParameters, "shear_layer_2d: thickness must be positive");
  }
  const double L = grid.length();
  const double k = grid.base_wavenumber();
  const double rho = thickness * L / 4.0;
  VectorField v = VectorField::from_function(grid, [=](double x, double y, double) {
    const double u1 = y <= L / 2 ? std::tanh((y - L / 4) / rho) : std::tanh((3 * L / 4 - y) / rho);
    return Vec3{amplitude * u1, amplitude * perturbation * std::sin(k * x), 0.0};
  });
  return clean(v);
}

VectorField generate_ic(const Scenario& s, const Grid& grid) {
  if (s.name == "abc") return clean(abc(grid, s.a, s.b, s.c, s.wavenumber));
  if (s.name == "taylor_green_2d") return clean(taylor_green_2d(grid, s.amplitude));
  if (s.name == "random_bandlimited") return random_bandlimited(grid, s);
  if (s.name == "shear_layer_2d")
    return shear_layer_2d(grid, s.thickness, s.perturbation, s.amplitude);
  throw Error(ErrorKind::kBadParameters, "unknown scenario '" + s.name + "'");
}

}  // namespace labelflow::scenario
