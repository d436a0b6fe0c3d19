#include "labelflow/eos.hpp"

#include <cmath>

#include "labelflow/error.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::eos {
namespace {

VectorField sampled(const fields::FieldSampler& sampler, const VectorField& delta) {
  auto parts = sampler.compose(delta);
  return spectral::dealias(
      VectorField(std::move(parts[0]), std::move(parts[1]), std::move(parts[2])));
}

void remove_mean(ScalarField& f) {
  const double m = mean(f);
  for (double& v : f.values()) v -= m;
}

}  // namespace

MatrixField grad_A(const VectorField& delta) {
  MatrixField m = spectral::jacobian(delta);
  for (int a = 0; a < 3; ++a)
    for (double& v : m(a, a).values()) v += 1.0;
  return m;
}

EquationOfState::EquationOfState(const VectorField& phi, fields::InterpolationScheme scheme)
    : phi_(phi),
      zeta_(spectral::curl(phi)),
      scheme_(scheme),
      phi_sampler_(std::make_unique<fields::FieldSampler>(phi_, scheme)),
      zeta_sampler_(std::make_unique<fields::FieldSampler>(zeta_, scheme)) {}

VectorField EquationOfState::phi_at_A(const VectorField& delta) const {
  return sampled(*phi_sampler_, delta);
}

VectorField EquationOfState::zeta_at_A(const VectorField& delta) const {
  return sampled(*zeta_sampler_, delta);
}

VectorField EquationOfState::pulled_back(const VectorField& delta) const {
  require_same_grid(phi_.grid(), delta.grid(), "equation of state");
  const VectorField pa = phi_at_A(delta);
  const MatrixField m = grad_A(delta);
  VectorField v(delta.grid());
  const std::size_t size = delta.grid().size();
  for (int b = 0; b < 3; ++b)
    for (std::size_t i = 0; i < size; ++i)
      v[b][i] = m(0, b)[i] * pa[0][i] + m(1, b)[i] * pa[1][i] + m(2, b)[i] * pa[2][i];
  return spectral::dealias(v);
}

VectorField EquationOfState::velocity(const VectorField& delta) const {
  return spectral::leray_project(pulled_back(delta));
}

MatrixField EquationOfState::velocity_gradient(const VectorField& delta) const {
  require_same_grid(phi_.grid(), delta.grid(), "equation of state");
  const Grid& g = delta.grid();
  const VectorField za = zeta_at_A(delta);
  const MatrixField m = grad_A(delta);
  const std::size_t size = g.size();

  // det_il = Det[zeta(A); column i of grad A; column l of grad A], antisymmetric.
  MatrixField det(g);
  for (std::size_t p = 0; p < size; ++p) {
    const Mat3 a = m.at(p);
    const Vec3 z = za.at(p);
    for (int i = 0; i < 3; ++i)
      for (int l = i + 1; l < 3; ++l) {
        // Column cross product, then dot with zeta.
        const Vec3 ci{a[0][i], a[1][i], a[2][i]};
        const Vec3 cl{a[0][l], a[1][l], a[2][l]};
        const Vec3 x{ci[1] * cl[2] - ci[2] * cl[1], ci[2] * cl[0] - ci[0] * cl[2],
                     ci[0] * cl[1] - ci[1] * cl[0]};
        const double d = dot(z, x);
        det(i, l)[p] = d;
        det(l, i)[p] = -d;
      }
  }

  MatrixField out(g);
  for (int i = 0; i < 3; ++i) {
    VectorField row(det(i, 0), det(i, 1), det(i, 2));
    SpectralVector s = spectral::leray_project(spectral::dealias(spectral::forward(row)));
    for (auto& c : s) c[0] = 0.0;
    const VectorField du = spectral::inverse(s);
    for (int j = 0; j < 3; ++j) out(j, i) = du[j];
  }
  return out;
}

ScalarField EquationOfState::n_A(const VectorField& delta) const {
  const SpectralVector v = spectral::forward(pulled_back(delta));
  SpectralField div = spectral::divergence(v);
  div[0] = 0.0;
  return spectral::inverse(spectral::inverse_laplacian(div));
}

VectorField velocity_W(const EosInput& in, fields::InterpolationScheme scheme) {
  return EquationOfState(in.phi, scheme).velocity(in.delta);
}

MatrixField velocity_gradient_det(const EosInput& in, fields::InterpolationScheme scheme) {
  return EquationOfState(in.phi, scheme).velocity_gradient(in.delta);
}

ScalarField solve_n_A(const EosInput& in, fields::InterpolationScheme scheme) {
  return EquationOfState(in.phi, scheme).n_A(in.delta);
}

ScalarField pressure(std::span<const ScalarField> n_path, double dt, const VectorField& u) {
  if (n_path.size() < 3) {
    throw Error(ErrorKind::kInsufficientHistory,
                "pressure needs three samples of n, got " + std::to_string(n_path.size()));
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::kBadParameters, "pressure: dt must be positive");
  const std::size_t last = n_path.size() - 1;
  const ScalarField& n_prev = n_path[last - 2];
  const ScalarField& n_mid = n_path[last - 1];
  const ScalarField& n_next = n_path[last];
  require_same_grid(n_mid.grid(), u.grid(), "pressure");

  const VectorField grad_n = spectral::gradient(n_mid);
  ScalarField p(u.grid());
  const double inv_2dt = 0.5 / dt;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec3 ui = u.at(i);
    p[i] = (n_next[i] - n_prev[i]) * inv_2dt + dot(ui, grad_n.at(i)) + 0.5 * dot(ui, ui);
  }
  p = spectral::dealias(p);
  remove_mean(p);
  return p;
}

double relative_divergence(const VectorField& phi) {
  const double norm = l2_norm(phi);
  if (norm == 0.0) return 0.0;
  return l2_norm(spectral::divergence(phi)) / norm;
}

}  // namespace labelflow::eos
