#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "labelflow/field.hpp"
#include "labelflow/scenario.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::testing {

/// Explicit trigonometric polynomial with random coefficients on |m_j| <= k.
/// Evaluates the same continuous function on any grid of the same period.
class TrigSum {
 public:
  TrigSum(std::uint64_t seed, int k, double length = 2.0 * std::numbers::pi)
      : base_(2.0 * std::numbers::pi / length) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int a = -k; a <= k; ++a)
      for (int b = -k; b <= k; ++b)
        for (int c = -k; c <= k; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          terms_.push_back({a, b, c, normal(rng), normal(rng)});
        }
  }

  double operator()(double x, double y, double z) const {
    double s = 0.0;
    for (const auto& t : terms_) {
      const double ph = base_ * (t.a * x + t.b * y + t.c * z);
      s += t.s * std::sin(ph) + t.c0 * std::cos(ph);
    }
    return s;
  }

  /// Analytic derivative along `axis`.
  double derivative(double x, double y, double z, int axis) const {
    double s = 0.0;
    for (const auto& t : terms_) {
      const double ph = base_ * (t.a * x + t.b * y + t.c * z);
      const double k = base_ * (axis == 0 ? t.a : (axis == 1 ? t.b : t.c));
      s += k * (t.s * std::cos(ph) - t.c0 * std::sin(ph));
    }
    return s;
  }

  ScalarField sample(const Grid& g) const {
    return ScalarField::from_function(g, [&](double x, double y, double z) { return (*this)(x, y, z); });
  }

 private:
  struct Term {
    int a, b, c;
    double s, c0;
  };
  double base_;
  std::vector<Term> terms_;
};

/// Divergence-free band-limited field (|k| <= k_cut), unit rms.
inline VectorField random_solenoidal(const Grid& g, std::uint64_t seed, int k_cut = 2,
                                     bool two_dimensional = false) {
  scenario::Scenario s;
  s.name = "random_bandlimited";
  s.seed = seed;
  s.k_cut = k_cut;
  s.spectrum_exponent = 1.0;
  s.two_dimensional = two_dimensional;
  return scenario::generate_ic(s, g);
}

/// Band-limited field with both solenoidal and gradient parts.
inline VectorField random_generic(const Grid& g, std::uint64_t seed, int k_cut = 2) {
  VectorField v = random_solenoidal(g, seed, k_cut);
  const ScalarField f = random_solenoidal(g, seed + 7919, k_cut)[0];
  v += spectral::gradient(f);
  return v;
}

/// v rescaled so that max |dv_a/dx_b| equals `target`.
inline VectorField with_gradient(VectorField v, double target) {
  v *= target / sup_norm(spectral::jacobian(v));
  return v;
}

inline double relative_l2(const VectorField& a, const VectorField& b) {
  return l2_norm(a - b) / l2_norm(b);
}

inline double relative_l2(const MatrixField& a, const MatrixField& b) {
  MatrixField d = a;
  d -= b;
  return l2_norm(d) / l2_norm(b);
}

inline double max_difference(const ScalarField& a, const ScalarField& b) {
  return max_abs(a - b);
}

}  // namespace labelflow::testing
