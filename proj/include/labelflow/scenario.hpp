#pragma once

#include <cstdint>
#include <string>

#include "labelflow/field.hpp"

namespace labelflow::scenario {

enum class Normalization {
  kRms,          // root-mean-square |phi| equals the amplitude
  kCurlHolder,   // C^{0,mu} norm of curl phi equals the amplitude
};

struct Scenario {
  std::string name = "abc";
  // abc; wavenumber in units of 2 pi / L
  double a = 1.0, b = 1.0, c = 1.0;
  int wavenumber = 1;
  // taylor_green_2d, shear_layer_2d, random_bandlimited
  double amplitude = 1.0;
  // random_bandlimited
  std::uint64_t seed = 1;
  double spectrum_exponent = 2.0;
  int k_cut = 4;
  bool two_dimensional = false;
  Normalization normalization = Normalization::kRms;
  double mu = 0.5;
  // shear_layer_2d
  double thickness = 0.2;      // fraction of L/4
  double perturbation = 0.05;
};

/// Initial velocity for a named scenario: taylor_green_2d, abc,
/// random_bandlimited or shear_layer_2d. The result is divergence-free and
/// supported inside the two-thirds band. Throws BadParameters.
VectorField generate_ic(const Scenario& s, const Grid& grid);

VectorField abc(const Grid& grid, double a, double b, double c, int wavenumber = 1);
VectorField taylor_green_2d(const Grid& grid, double amplitude = 1.0);
VectorField random_bandlimited(const Grid& grid, const Scenario& s);
VectorField shear_layer_2d(const Grid& grid, double thickness, double perturbation,
                           double amplitude = 1.0);

}  // namespace labelflow::scenario
