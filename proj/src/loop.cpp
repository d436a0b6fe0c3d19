#include "labelflow/loop.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "labelflow/error.hpp"

namespace labelflow::fields {
namespace {

double minimal_image(double d, double period) {
  return d - period * std::round(d / period);
}

void check_loop(const MarkerLoop& loop, double period) {
  const std::size_t m = loop.points.size();
  if (m < kMinLoopMarkers) {
    throw Error(ErrorKind::kDegenerateLoop,
                "marker loop needs at least 16 points, got " + std::to_string(m));
  }
  const double tol = 1e-12 * period;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec3& a = loop.points[i];
    const Vec3& b = loop.points[(i + 1) % m];
    Vec3 d;
    for (int c = 0; c < 3; ++c) d[c] = minimal_image(b[c] - a[c], period);
    if (norm(d) <= tol) {
      throw Error(ErrorKind::kDegenerateLoop,
                  "marker loop has coincident neighbours at index " + std::to_string(i));
    }
  }
}

// d/ds of the unwrapped loop at each marker, s in [0, 1).
std::vector<Vec3> spectral_tangent(const MarkerLoop& loop, double period) {
  const std::size_t m = loop.points.size();
  std::vector<Vec3> unwrapped(m);
  unwrapped[0] = loop.points[0];
  for (std::size_t i = 1; i < m; ++i)
    for (int c = 0; c < 3; ++c)
      unwrapped[i][c] = unwrapped[i - 1][c] +
                        minimal_image(loop.points[i][c] - loop.points[i - 1][c], period);
  // Net winding around the torus; zero for contractible loops.
  Vec3 winding;
  for (int c = 0; c < 3; ++c)
    winding[c] = unwrapped[m - 1][c] +
                 minimal_image(loop.points[0][c] - loop.points[m - 1][c], period) -
                 unwrapped[0][c];

  std::vector<Vec3> tangent(m);
  const double two_pi = 2.0 * std::numbers::pi;
  const int half = static_cast<int>(m / 2);
  for (int c = 0; c < 3; ++c) {
    std::vector<std::complex<double>> coeff(m);
    for (std::size_t q = 0; q < m; ++q) {
      std::complex<double> s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double periodic =
            unwrapped[i][c] - winding[c] * static_cast<double>(i) / static_cast<double>(m);
        const double phase = -two_pi * static_cast<double>(q * i % m) / static_cast<double>(m);
        s += periodic * std::complex<double>(std::cos(phase), std::sin(phase));
      }
      coeff[q] = s / static_cast<double>(m);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::complex<double> d = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        const int mode = static_cast<int>(q) <= half ? static_cast<int>(q)
                                                     : static_cast<int>(q) - static_cast<int>(m);
        if (m % 2 == 0 && mode == half) continue;
        const double phase = two_pi * static_cast<double>(q * i % m) / static_cast<double>(m);
        d += std::complex<double>(0.0, two_pi * mode) * coeff[q] *
             std::complex<double>(std::cos(phase), std::sin(phase));
      }
      tangent[i][c] = d.real() + winding[c];
    }
  }
  return tangent;
}

}  // namespace

MarkerLoop circle_loop(const Vec3& center, double radius, int axis, int markers) {
  MarkerLoop loop;
  loop.points.reserve(markers);
  const int a = (axis + 1) % 3, b = (axis + 2) % 3;
  for (int i = 0; i < markers; ++i) {
    const double s = 2.0 * std::numbers::pi * i / markers;
    Vec3 p = center;
    p[a] += radius * std::cos(s);
    p[b] += radius * std::sin(s);
    loop.points.push_back(p);
  }
  return loop;
}

double circulation(std::span<const Vec3> velocities, const MarkerLoop& loop, double period,
                   LoopQuadrature quadrature) {
  check_loop(loop, period);
  const std::size_t m = loop.points.size();
  if (velocities.size() != m) {
    throw Error(ErrorKind::kBadParameters, "circulation: velocity count differs from markers");
  }
  double sum = 0.0;
  if (quadrature == LoopQuadrature::kPolyline) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      for (int c = 0; c < 3; ++c) {
        const double seg = minimal_image(loop.points[j][c] - loop.points[i][c], period);
        sum += 0.5 * (velocities[i][c] + velocities[j][c]) * seg;
      }
    }
    return sum;
  }
  const std::vector<Vec3> tangent = spectral_tangent(loop, period);
  for (std::size_t i = 0; i < m; ++i) sum += dot(velocities[i], tangent[i]);
  return sum / static_cast<double>(m);
}

double circulation(const VectorField& u, const MarkerLoop& loop, InterpolationScheme scheme,
                   LoopQuadrature quadrature) {
  check_loop(loop, u.grid().length());
  const std::vector<Vec3> v = interpolate_at(u, loop.points, scheme);
  return circulation(v, loop, u.grid().length(), quadrature);
}

}  // namespace labelflow::fields
