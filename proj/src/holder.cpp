#include "labelflow/holder.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "labelflow/error.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::fields {
namespace {

void check_mu(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw Error(ErrorKind::kBadParameters, "Hoelder exponent must lie in (0, 1)");
  }
}

}  // namespace

HolderNorm holder_norm_c0mu(std::span<const ScalarField> components, double mu) {
  check_mu(mu);
  HolderNorm h;
  h.mu = mu;
  if (components.empty()) return h;
  const Grid& g = components.front().grid();
  const int n = g.n();
  const std::size_t size = g.size();

  double sup2 = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    double s = 0.0;
    for (const auto& c : components) s += c[i] * c[i];
    sup2 = std::max(sup2, s);
  }
  h.sup_part = std::sqrt(sup2);

  double semi = 0.0;
  for (int step = 1; step <= n / 2; step *= 2) {
    const double factor = std::pow(g.length() / (step * g.spacing()), mu);
    for (int axis = 0; axis < 3; ++axis) {
      double max_diff2 = 0.0;
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            int ii = i, jj = j, kk = k;
            if (axis == 0) ii = (i + step) % n;
            if (axis == 1) jj = (j + step) % n;
            if (axis == 2) kk = (k + step) % n;
            const std::size_t a = g.index(i, j, k), b = g.index(ii, jj, kk);
            double d2 = 0.0;
            for (const auto& c : components) {
              const double d = c[a] - c[b];
              d2 += d * d;
            }
            max_diff2 = std::max(max_diff2, d2);
          }
      semi = std::max(semi, std::sqrt(max_diff2) * factor);
    }
  }
  h.seminorm_part = semi;
  h.total = h.sup_part + h.seminorm_part;
  return h;
}

HolderNorm holder_norm_c0mu(const ScalarField& f, double mu) {
  return holder_norm_c0mu(std::span<const ScalarField>(&f, 1), mu);
}

HolderNorm holder_norm_c0mu(const VectorField& f, double mu) {
  return holder_norm_c0mu(f.components(), mu);
}

HolderNorm holder_norm_c0mu(const MatrixField& f, double mu) {
  return holder_norm_c0mu(f.components(), mu);
}

namespace {

HolderNorm with_gradient(HolderNorm base, const HolderNorm& grad, double length) {
  base.order = 1;
  base.gradient_part = length * grad.total;
  base.total = base.sup_part + base.seminorm_part + base.gradient_part;
  return base;
}

}  // namespace

HolderNorm holder_norm_c1mu(const ScalarField& f, double mu) {
  const VectorField grad = spectral::gradient(f);
  return with_gradient(holder_norm_c0mu(f, mu), holder_norm_c0mu(grad, mu),
                       f.grid().length());
}

HolderNorm holder_norm_c1mu(const VectorField& f, double mu) {
  const MatrixField grad = spectral::jacobian(f);
  return with_gradient(holder_norm_c0mu(f, mu), holder_norm_c0mu(grad, mu),
                       f.grid().length());
}

}  // namespace labelflow::fields
