#pragma once

#include <span>

#include "labelflow/field.hpp"

namespace labelflow::fields {

/// Estimated Hoelder norm. For order 0, total = sup_part + seminorm_part.
/// For order 1, gradient_part = L * ||grad f||_{0,mu} and
/// total = sup_part + seminorm_part + gradient_part.
struct HolderNorm {
  double mu = 0.5;
  int order = 0;
  double sup_part = 0.0;
  double seminorm_part = 0.0;
  double gradient_part = 0.0;
  double total = 0.0;
};

/// C^{0,mu} norm of a field with any number of components, using Euclidean
/// (Frobenius) magnitudes.
///
/// The seminorm samples node pairs separated along one axis by 1, 2, 4, ...,
/// n/2 grid steps (periodic distance), so it can only underestimate the
/// supremum over all pairs.
HolderNorm holder_norm_c0mu(std::span<const ScalarField> components, double mu);
HolderNorm holder_norm_c0mu(const ScalarField& f, double mu);
HolderNorm holder_norm_c0mu(const VectorField& f, double mu);
HolderNorm holder_norm_c0mu(const MatrixField& f, double mu);

/// ||f||_{0,mu} + L ||grad f||_{0,mu}, gradient taken spectrally.
HolderNorm holder_norm_c1mu(const ScalarField& f, double mu);
HolderNorm holder_norm_c1mu(const VectorField& f, double mu);

}  // namespace labelflow::fields
