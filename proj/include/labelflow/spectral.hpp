#pragma once

#include "labelflow/field.hpp"

namespace labelflow::spectral {

SpectralField forward(const ScalarField& f);
ScalarField inverse(const SpectralField& f);
SpectralVector forward(const VectorField& v);
VectorField inverse(const SpectralVector& v);

/// Visits every stored coefficient with its signed integer modes.
template <class F>
void for_each_mode(const Grid& grid, F&& visit) {
  const int n = grid.n();
  const int h = grid.half();
  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz) {
    const int mz = grid.mode(kz);
    for (int ky = 0; ky < n; ++ky) {
      const int my = grid.mode(ky);
      for (int kx = 0; kx < h; ++kx, ++idx) visit(idx, kx, my, mz);
    }
  }
}

/// Component i is i k_i f^. Nyquist modes are dropped.
SpectralVector gradient(const SpectralField& f);
SpectralField derivative(const SpectralField& f, int axis);
SpectralField divergence(const SpectralVector& v);
SpectralVector curl(const SpectralVector& v);
SpectralField laplacian(const SpectralField& f);

/// Solves Laplacian(g) = f with zero-mean g. Throws NonZeroMean when the
/// mean of f exceeds `tolerance` relative to the coefficient l2 norm.
SpectralField inverse_laplacian(const SpectralField& f, double tolerance = 1e-10);

/// v - grad InvLaplacian div v. The k = 0 mode passes through unchanged.
SpectralVector leray_project(const SpectralVector& v);

/// True when every |m_j| <= n/3, i.e. the mode survives the two-thirds rule.
inline bool in_band(int mx, int my, int mz, int n) {
  auto ok = [n](int m) { return 3 * (m < 0 ? -m : m) <= n; };
  return ok(mx) && ok(my) && ok(mz);
}

/// Zeroes every coefficient with some |k_j| > (2/3) k_max.
SpectralField dealias(SpectralField f);
SpectralVector dealias(SpectralVector v);

/// Max modulus of the coefficients.
double max_norm(const SpectralField& f);
/// sqrt(sum |c_k|^2 * L^3), equal to the real-space L2 norm by Parseval.
double l2_norm(const SpectralField& f);

// Real-space conveniences built on the kernels above.
VectorField gradient(const ScalarField& f);
/// J(a, b) = d v_a / d x_b.
MatrixField jacobian(const VectorField& v);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
VectorField leray_project(const VectorField& v);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
/// Pointwise product followed by two-thirds truncation.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

}  // namespace labelflow::spectral
