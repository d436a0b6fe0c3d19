#include "labelflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "labelflow/error.hpp"
#include "labelflow/scenario.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::diagnostics {
namespace {

Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

double relative_l2(const VectorField& a, const VectorField& b) {
  const double ref = l2_norm(b);
  const double d = l2_norm(a - b);
  return ref > 0.0 ? d / ref : d;
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

Mat3 adjugate(const Mat3& m) {
  Mat3 adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      adj[i][j] = m[j1][i1] * m[j2][i2] - m[j1][i2] * m[j2][i1];
    }
  return adj;
}

Mat3 inverse_by_adjugate(const Mat3& m) {
  Mat3 adj = adjugate(m);
  const double det = determinant(m);
  for (auto& row : adj)
    for (double& v : row) v /= det;
  return adj;
}

double stretching_rate(const Mat3& grad_u, const Vec3& omega) {
  const double mag = norm(omega);
  if (mag == 0.0) return 0.0;
  const Vec3 xi{omega[0] / mag, omega[1] / mag, omega[2] / mag};
  return dot(xi, mat_vec(grad_u, xi));
}

MatrixField adjugate_grad_A(const VectorField& delta) {
  const MatrixField m = eos::grad_A(delta);
  MatrixField out(delta.grid());
  for (std::size_t p = 0; p < delta.grid().size(); ++p) out.set(p, adjugate(m.at(p)));
  return out;
}

MatrixField inverse_grad_A(const VectorField& delta) {
  const MatrixField m = eos::grad_A(delta);
  MatrixField out(delta.grid());
  for (std::size_t p = 0; p < delta.grid().size(); ++p) out.set(p, inverse_by_adjugate(m.at(p)));
  return out;
}

ScalarField det_grad_A(const VectorField& delta) {
  const MatrixField m = eos::grad_A(delta);
  ScalarField out(delta.grid());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = determinant(m.at(p));
  return out;
}

VectorField cauchy_vorticity(const eos::EquationOfState& eos, const VectorField& delta) {
  const VectorField za = eos.zeta_at_A(delta);
  const MatrixField inv = inverse_grad_A(delta);
  VectorField out(delta.grid());
  for (std::size_t p = 0; p < delta.grid().size(); ++p) {
    const Vec3 w = mat_vec(inv.at(p), za.at(p));
    for (int c = 0; c < 3; ++c) out[c][p] = w[c];
  }
  return out;
}

VectorField cauchy_vorticity(const VectorField& delta, const VectorField& phi,
                             fields::InterpolationScheme scheme) {
  return cauchy_vorticity(eos::EquationOfState(phi, scheme), delta);
}

VectorField vorticity_from_determinants(const eos::EquationOfState& eos,
                                        const VectorField& delta) {
  const VectorField za = eos.zeta_at_A(delta);
  const MatrixField m = eos::grad_A(delta);
  VectorField out(delta.grid());
  for (std::size_t p = 0; p < delta.grid().size(); ++p) {
    const Mat3 a = m.at(p);
    const Vec3 z = za.at(p);
    // With (p, i, l) cyclic the two orderings of eps contribute equally.
    for (int q = 0; q < 3; ++q) {
      const int i = (q + 1) % 3, l = (q + 2) % 3;
      const Vec3 ci{a[0][i], a[1][i], a[2][i]};
      const Vec3 cl{a[0][l], a[1][l], a[2][l]};
      const Mat3 cols{{{z[0], ci[0], cl[0]}, {z[1], ci[1], cl[1]}, {z[2], ci[2], cl[2]}}};
      out[q][p] = determinant(cols);
    }
  }
  return out;
}

ScalarField label_derivative(const VectorField& delta, const ScalarField& f, int j) {
  if (j < 0 || j > 2) throw Error(ErrorKind::kBadParameters, "label_derivative: j must be 0, 1 or 2");
  require_same_grid(delta.grid(), f.grid(), "label_derivative");
  const MatrixField adj = adjugate_grad_A(delta);
  const VectorField df = spectral::gradient(f);
  ScalarField out(f.grid());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = adj(0, j)[p] * df[0][p] + adj(1, j)[p] * df[1][p] + adj(2, j)[p] * df[2][p];
  return spectral::dealias(out);
}

ScalarField label_coordinate(const VectorField& delta, int i, int j) {
  if (i < 0 || i > 2) throw Error(ErrorKind::kBadParameters, "label_coordinate: i must be 0, 1 or 2");
  ScalarField out = label_derivative(delta, delta[i], j);
  out *= -1.0;
  if (i == j)
    for (double& v : out.values()) v += 1.0;
  return out;
}

Calibrator calibrator(const VectorField& delta, const std::vector<Shift>& offsets, int stride) {
  if (stride < 1) throw Error(ErrorKind::kBadParameters, "calibrator: stride must be >= 1");
  const Grid& g = delta.grid();
  const int n = g.n();
  const MatrixField m = eos::grad_A(delta);
  const MatrixField inv = inverse_grad_A(delta);
  Calibrator cal;
  cal.offsets = offsets;
  for (int k = 0; k < n; k += stride)
    for (int j = 0; j < n; j += stride)
      for (int i = 0; i < n; i += stride) cal.samples.push_back({i, j, k});
  cal.values.reserve(cal.samples.size() * offsets.size());
  const Mat3 id = identity3();
  for (const auto& s : cal.samples) {
    const Mat3 mi = inv.at(g.index(s[0], s[1], s[2]));
    for (const auto& z : offsets) {
      const Mat3 shifted =
          m.at(g.index(wrap(s[0] + z[0], n), wrap(s[1] + z[1], n), wrap(s[2] + z[2], n)));
      const Mat3 c = multiply(shifted, mi);
      Mat3 d;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) d[a][b] = c[a][b] - id[a][b];
      cal.summary = std::max(cal.summary, frobenius(d));
      cal.values.push_back(c);
    }
  }
  return cal;
}

VectorField w_field(const VectorField& delta, const VectorField& psi,
                    fields::InterpolationScheme scheme) {
  return eos::EquationOfState(psi, scheme).pulled_back(delta);
}

ScalarField stretching_alpha(const VectorField& u, const VectorField& omega) {
  require_same_grid(u.grid(), omega.grid(), "stretching_alpha");
  const MatrixField g = spectral::jacobian(u);
  const double cut = 1e-8 * sup_norm(omega);
  ScalarField alpha(u.grid());
  for (std::size_t p = 0; p < alpha.size(); ++p) {
    const Vec3 w = omega.at(p);
    if (norm(w) <= cut) continue;
    alpha[p] = stretching_rate(g.at(p), w);
  }
  return alpha;
}

std::vector<TestMode> default_test_modes() {
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {2, 1, 0}, {1, 2, 1}};
}

double test_function(const TestMode& m, const Vec3& a, double length) {
  double v = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (m[k] <= 0) continue;
    const double s = std::sin(std::numbers::pi * m[k] * a[k] / length);
    v *= s * s;
  }
  return v;
}

double distribution_integral(const VectorField& delta, const TestMode& m) {
  const Grid& g = delta.grid();
  const int n = g.n();
  double sum = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t p = g.index(i, j, k);
        const Vec3 a{g.coordinate(i) + delta[0][p], g.coordinate(j) + delta[1][p],
                     g.coordinate(k) + delta[2][p]};
        sum += test_function(m, a, g.length());
      }
  return sum * g.cell_volume();
}

std::vector<VectorField> psi_ensemble(const Grid& grid, int count, std::uint64_t seed) {
  std::vector<VectorField> out;
  scenario::Scenario s;
  s.name = "random_bandlimited";
  s.k_cut = 2;
  s.spectrum_exponent = 1.0;
  for (int i = 0; i < count; ++i) {
    s.seed = seed + static_cast<std::uint64_t>(i);
    out.push_back(scenario::random_bandlimited(grid, s));
  }
  return out;
}

// ---------------------------------------------------------------------------

Recorder::Recorder(const Grid& grid, RecorderOptions options)
    : grid_(grid),
      options_(std::move(options)),
      psi_(psi_ensemble(grid, options_.psi_count, options_.psi_seed)) {}

void Recorder::prepare_chart(const evolve::ChartState& state) {
  if (cache_.chart_index == state.chart_index && !cache_.psi.empty()) return;
  cache_ = ChartCache{};
  cache_.chart_index = state.chart_index;
  const auto scheme = state.eos->scheme();
  const VectorField& zeta = state.eos->zeta();
  for (const auto& psi : psi_) {
    cache_.psi.push_back(std::make_unique<fields::FieldSampler>(psi, scheme));
    const ScalarField zp = dot(zeta, psi);
    cache_.zeta_dot_psi_sup.push_back(max_abs(zp));
    cache_.zeta_dot_psi.push_back(std::make_unique<fields::FieldSampler>(zp, scheme));
  }
}

DiagnosticsRecord Recorder::record(const evolve::ChartState& state,
                                   std::span<const fields::MarkerLoop> loops) {
  require_same_grid(grid_, state.grid(), "Recorder");
  prepare_chart(state);
  DiagnosticsRecord r;
  r.t = state.t_now;
  r.chart_index = state.chart_index;
  const VectorField& u = state.u;
  const VectorField& delta = state.delta;
  const VectorField omega = spectral::curl(u);
  r.energy = integral(dot(u, u));
  r.helicity = integral(dot(u, omega));
  r.sup_vorticity = sup_norm(omega);
  if (has_last_) bkm_ += 0.5 * (r.t - last_t_) * (r.sup_vorticity + last_sup_);
  has_last_ = true;
  last_t_ = r.t;
  last_sup_ = r.sup_vorticity;
  r.bkm_integral = bkm_;

  const MatrixField m = eos::grad_A(delta);
  double det_err = 0.0;
  for (std::size_t p = 0; p < grid_.size(); ++p)
    det_err = std::max(det_err, std::abs(determinant(m.at(p)) - 1.0));
  r.det_error = det_err;
  r.holder_grad_delta = state.holder_grad_delta.total;
  r.sup_delta = sup_norm(delta);
  r.cauchy_residual = relative_l2(cauchy_vorticity(*state.eos, delta), omega);

  double drift = 0.0;
  for (std::size_t q = 0; q < psi_.size(); ++q) {
    auto parts = cache_.psi[q]->compose(delta);
    const VectorField pa = spectral::dealias(
        VectorField(std::move(parts[0]), std::move(parts[1]), std::move(parts[2])));
    const ScalarField target = std::move(cache_.zeta_dot_psi[q]->compose(delta)[0]);
    double worst = 0.0;
    for (std::size_t p = 0; p < grid_.size(); ++p) {
      double w[3];
      for (int b = 0; b < 3; ++b)
        w[b] = m(0, b)[p] * pa[0][p] + m(1, b)[p] * pa[1][p] + m(2, b)[p] * pa[2][p];
      const double ow = omega[0][p] * w[0] + omega[1][p] * w[1] + omega[2][p] * w[2];
      worst = std::max(worst, std::abs(ow - target[p]));
    }
    const double ref = cache_.zeta_dot_psi_sup[q];
    drift = std::max(drift, ref > 0.0 ? worst / ref : worst);
  }
  r.omega_dot_w_drift = drift;

  for (const auto& loop : loops)
    r.circulations.push_back(
        fields::circulation(u, loop, state.eos->scheme(), options_.quadrature));
  for (const auto& mode : options_.test_modes)
    r.distribution_check.push_back(distribution_integral(delta, mode));
  return r;
}

}  // namespace labelflow::diagnostics
