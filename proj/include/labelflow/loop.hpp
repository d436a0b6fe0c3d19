#pragma once

#include <span>
#include <vector>

#include "labelflow/field.hpp"
#include "labelflow/interpolation.hpp"

namespace labelflow::fields {

/// Closed polyline of marker points; the segment from the last point back
/// to the first is part of the loop.
struct MarkerLoop {
  std::vector<Vec3> points;
};

inline constexpr int kMinLoopMarkers = 16;

/// Circle of `markers` points about `center` in the plane normal to `axis`.
MarkerLoop circle_loop(const Vec3& center, double radius, int axis, int markers);

enum class LoopQuadrature {
  /// Trapezoid rule in the marker parameter with a spectrally differentiated
  /// tangent; exponentially accurate for smooth loops.
  kSpectral,
  /// Sum over segments of the endpoint-averaged velocity times the segment.
  kPolyline,
};

/// Circulation of u around the loop. Segment vectors use the minimal image
/// on the torus, so loops may straddle the periodic boundary.
/// Throws DegenerateLoop for fewer than 16 markers or coincident neighbours.
double circulation(const VectorField& u, const MarkerLoop& loop,
                   InterpolationScheme scheme = {},
                   LoopQuadrature quadrature = LoopQuadrature::kSpectral);

/// Same quadrature with velocities already sampled at the markers.
double circulation(std::span<const Vec3> velocities, const MarkerLoop& loop,
                   double period, LoopQuadrature quadrature = LoopQuadrature::kSpectral);

}  // namespace labelflow::fields
