#pragma once

#include <span>
#include <vector>

#include "labelflow/field.hpp"

namespace labelflow::fields {

/// Periodic Lagrange interpolation of width `stencil` (per axis) on a copy of
/// the field spectrally refined by `upsample`. {4, 1} is plain tricubic
/// interpolation on the original grid.
struct InterpolationScheme {
  int stencil = 8;
  int upsample = 2;

  static InterpolationScheme tricubic() { return {4, 1}; }
  /// Throws BadParameters unless stencil is even in [2, 16] and upsample >= 1.
  void validate() const;
};

/// Interpolates a fixed set of component fields at arbitrary points.
///
/// Holds the refined samples, so building one costs an FFT per component;
/// reuse it when the same field is sampled repeatedly (e.g. the chart's
/// initial velocity inside the equation of state).
class FieldSampler {
 public:
  FieldSampler(std::span<const ScalarField> components, InterpolationScheme scheme);
  FieldSampler(const ScalarField& f, InterpolationScheme scheme);
  FieldSampler(const VectorField& f, InterpolationScheme scheme);

  int components() const noexcept { return static_cast<int>(coarse_.size()); }
  const Grid& grid() const noexcept { return grid_; }
  const InterpolationScheme& scheme() const noexcept { return scheme_; }

  /// Writes one value per component into `out`. Points within 1e-12 grid
  /// steps of an original grid node return the stored nodal values.
  void sample(const Vec3& x, std::span<double> out) const;

  /// x -> f(x + delta(x)) for every node; nodes with delta exactly zero keep
  /// their original values.
  std::vector<ScalarField> compose(const VectorField& delta) const;

 private:
  Grid grid_;
  InterpolationScheme scheme_;
  int fine_n_;
  double fine_spacing_;
  int padded_n_ = 0;
  std::vector<std::vector<double>> coarse_;
  std::vector<std::vector<double>> fine_;
};

VectorField compose(const VectorField& f, const VectorField& delta,
                    InterpolationScheme scheme = {});
ScalarField compose(const ScalarField& f, const VectorField& delta,
                    InterpolationScheme scheme = {});

std::vector<Vec3> interpolate_at(const VectorField& f, std::span<const Vec3> points,
                                 InterpolationScheme scheme = {});
std::vector<double> interpolate_at(const ScalarField& f, std::span<const Vec3> points,
                                   InterpolationScheme scheme = {});

/// Direct evaluation of the trigonometric interpolant (Nyquist modes as
/// cosines). O(n^3) per point: the slow verification path.
double evaluate_exact(const SpectralField& f, const Vec3& x);
VectorField compose_exact(const VectorField& f, const VectorField& delta);

/// Zero-padded copy of `f` on an (r n)^3 grid with the same period.
ScalarField refine(const ScalarField& f, int factor);

}  // namespace labelflow::fields
