#include "labelflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "labelflow/error.hpp"
#include "labelflow/fft.hpp"

namespace labelflow::spectral {
namespace {

using Complex = std::complex<double>;
constexpr Complex kI(0.0, 1.0);

struct Wavenumbers {
  std::vector<double> x, y, z;  // derivative wavenumbers per storage index
};

Wavenumbers wavenumbers(const Grid& g) {
  Wavenumbers w;
  w.x.resize(g.half());
  w.y.resize(g.n());
  for (int i = 0; i < g.half(); ++i) w.x[i] = g.derivative_wavenumber(i);
  for (int i = 0; i < g.n(); ++i) w.y[i] = g.derivative_wavenumber(i);
  w.z = w.y;
  return w;
}

template <class F>
void for_each_k(const Grid& g, F&& visit) {
  const Wavenumbers w = wavenumbers(g);
  const int n = g.n();
  const int h = g.half();
  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < h; ++kx, ++idx) visit(idx, w.x[kx], w.y[ky], w.z[kz]);
}

}  // namespace

SpectralField forward(const ScalarField& f) {
  SpectralField out(f.grid());
  fft::forward(f.grid().n(), f.data(), out.data());
  return out;
}

ScalarField inverse(const SpectralField& f) {
  ScalarField out(f.grid());
  fft::inverse(f.grid().n(), f.data(), out.data());
  return out;
}

SpectralVector forward(const VectorField& v) {
  return {forward(v[0]), forward(v[1]), forward(v[2])};
}

VectorField inverse(const SpectralVector& v) {
  return VectorField(inverse(v[0]), inverse(v[1]), inverse(v[2]));
}

SpectralField derivative(const SpectralField& f, int axis) {
  SpectralField out(f.grid());
  for_each_k(f.grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    const double k = axis == 0 ? kx : (axis == 1 ? ky : kz);
    out[idx] = kI * k * f[idx];
  });
  return out;
}

SpectralVector gradient(const SpectralField& f) {
  SpectralVector out{SpectralField(f.grid()), SpectralField(f.grid()),
                     SpectralField(f.grid())};
  for_each_k(f.grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    const Complex c = kI * f[idx];
    out[0][idx] = kx * c;
    out[1][idx] = ky * c;
    out[2][idx] = kz * c;
  });
  return out;
}

SpectralField divergence(const SpectralVector& v) {
  SpectralField out(v[0].grid());
  for_each_k(v[0].grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    out[idx] = kI * (kx * v[0][idx] + ky * v[1][idx] + kz * v[2][idx]);
  });
  return out;
}

SpectralVector curl(const SpectralVector& v) {
  const Grid& g = v[0].grid();
  SpectralVector out{SpectralField(g), SpectralField(g), SpectralField(g)};
  for_each_k(g, [&](std::size_t idx, double kx, double ky, double kz) {
    out[0][idx] = kI * (ky * v[2][idx] - kz * v[1][idx]);
    out[1][idx] = kI * (kz * v[0][idx] - kx * v[2][idx]);
    out[2][idx] = kI * (kx * v[1][idx] - ky * v[0][idx]);
  });
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out(f.grid());
  for_each_k(f.grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    out[idx] = -(kx * kx + ky * ky + kz * kz) * f[idx];
  });
  return out;
}

SpectralField inverse_laplacian(const SpectralField& f, double tolerance) {
  const double scale = l2_norm(f) / std::sqrt(f.grid().volume());
  const double zero_mode = std::abs(f[0]);
  if (zero_mode > tolerance * std::max(scale, 1e-300) && zero_mode > 0.0) {
    std::ostringstream msg;
    msg << "inverse_laplacian: right-hand side has mean " << zero_mode
        << " (relative " << zero_mode / scale << ")";
    throw Error(ErrorKind::kNonZeroMean, msg.str());
  }
  SpectralField out(f.grid());
  for_each_k(f.grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    out[idx] = k2 > 0.0 ? -f[idx] / k2 : Complex(0.0, 0.0);
  });
  return out;
}

SpectralVector leray_project(const SpectralVector& v) {
  const Grid& g = v[0].grid();
  SpectralVector out = v;
  for_each_k(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) return;
    const Complex kv = (kx * v[0][idx] + ky * v[1][idx] + kz * v[2][idx]) / k2;
    out[0][idx] -= kx * kv;
    out[1][idx] -= ky * kv;
    out[2][idx] -= kz * kv;
  });
  return out;
}

SpectralField dealias(SpectralField f) {
  const int n = f.grid().n();
  for_each_mode(f.grid(), [&](std::size_t idx, int mx, int my, int mz) {
    if (!in_band(mx, my, mz, n)) f[idx] = Complex(0.0, 0.0);
  });
  return f;
}

SpectralVector dealias(SpectralVector v) {
  for (auto& c : v) c = dealias(std::move(c));
  return v;
}

double max_norm(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

double l2_norm(const SpectralField& f) {
  // Half layout: interior kx planes stand for two conjugate coefficients.
  const Grid& g = f.grid();
  const int n = g.n();
  double s = 0.0;
  for_each_mode(g, [&](std::size_t idx, int kx, int, int) {
    const double w = (kx == 0 || 2 * kx == n) ? 1.0 : 2.0;
    s += w * std::norm(f[idx]);
  });
  return std::sqrt(s * g.volume());
}

VectorField gradient(const ScalarField& f) { return inverse(gradient(forward(f))); }

MatrixField jacobian(const VectorField& v) {
  MatrixField out(v.grid());
  for (int a = 0; a < 3; ++a) {
    const SpectralVector g = gradient(forward(v[a]));
    for (int b = 0; b < 3; ++b) out(a, b) = inverse(g[b]);
  }
  return out;
}

ScalarField divergence(const VectorField& v) { return inverse(divergence(forward(v))); }

VectorField curl(const VectorField& v) { return inverse(curl(forward(v))); }

VectorField leray_project(const VectorField& v) {
  return inverse(leray_project(forward(v)));
}

ScalarField dealias(const ScalarField& f) { return inverse(dealias(forward(f))); }

VectorField dealias(const VectorField& v) { return inverse(dealias(forward(v))); }

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
  return dealias(multiply(a, b));
}

}  // namespace labelflow::spectral
