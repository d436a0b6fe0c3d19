#pragma once

#include <memory>
#include <span>

#include "labelflow/field.hpp"
#include "labelflow/interpolation.hpp"

namespace labelflow::eos {

/// The pair (delta, phi): A(x) = x + delta(x), phi the chart's initial velocity.
struct EosInput {
  const VectorField& delta;
  const VectorField& phi;
};

/// grad A = I + grad delta, (a, b) = d A_a / d x_b.
MatrixField grad_A(const VectorField& delta);

/// Velocity reconstruction for a fixed initial velocity phi.
///
/// Caches phi, its curl and the samplers for both, so repeated evaluations
/// along a trajectory only pay for the compositions.
class EquationOfState {
 public:
  explicit EquationOfState(const VectorField& phi,
                           fields::InterpolationScheme scheme = {});

  const VectorField& phi() const noexcept { return phi_; }
  const VectorField& zeta() const noexcept { return zeta_; }
  const fields::InterpolationScheme& scheme() const noexcept { return scheme_; }

  /// phi(A), dealiased.
  VectorField phi_at_A(const VectorField& delta) const;
  /// zeta(A), dealiased.
  VectorField zeta_at_A(const VectorField& delta) const;

  /// (grad A)^T phi(A) before projection, dealiased.
  VectorField pulled_back(const VectorField& delta) const;
  /// u = P (grad A)^T phi(A).
  VectorField velocity(const VectorField& delta) const;
  /// (j, i) holds d u_j / d x_i, assembled from determinants of zeta(A) and
  /// columns of grad A; u itself is never differentiated.
  MatrixField velocity_gradient(const VectorField& delta) const;
  /// Zero-mean n with Laplacian(n) = div((grad A)^T phi(A)).
  ScalarField n_A(const VectorField& delta) const;

 private:
  VectorField phi_;
  VectorField zeta_;
  fields::InterpolationScheme scheme_;
  std::unique_ptr<fields::FieldSampler> phi_sampler_;
  std::unique_ptr<fields::FieldSampler> zeta_sampler_;
};

VectorField velocity_W(const EosInput& in, fields::InterpolationScheme scheme = {});
MatrixField velocity_gradient_det(const EosInput& in, fields::InterpolationScheme scheme = {});
ScalarField solve_n_A(const EosInput& in, fields::InterpolationScheme scheme = {});

/// p = dn/dt + u.grad n + |u|^2 / 2 with a central difference over the last
/// three samples of n (uniform spacing dt); u is taken at the middle sample.
/// Zero mean. Throws InsufficientHistory for fewer than three samples.
ScalarField pressure(std::span<const ScalarField> n_path, double dt, const VectorField& u);

/// ||div phi|| / ||phi|| in L2; zero for phi = 0.
double relative_divergence(const VectorField& phi);

}  // namespace labelflow::eos
