#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "labelflow/eos.hpp"
#include "labelflow/evolve.hpp"
#include "labelflow/field.hpp"
#include "labelflow/loop.hpp"

namespace labelflow::diagnostics {

/// Transposed cofactor matrix of m.
Mat3 adjugate(const Mat3& m);
/// adjugate(m) / det(m).
Mat3 inverse_by_adjugate(const Mat3& m);
/// xi^T g xi with xi = omega / |omega|; zero for omega = 0. g(a, b) = du_a/dx_b.
double stretching_rate(const Mat3& grad_u, const Vec3& omega);

/// adj_ij = 1/2 eps_imn Det[e_j; dA/dx_m; dA/dx_n], the cofactor transpose
/// of grad A. Equals the inverse when det grad A = 1.
MatrixField adjugate_grad_A(const VectorField& delta);
/// adjugate / det: the inverse of grad A without a matrix solve.
MatrixField inverse_grad_A(const VectorField& delta);
ScalarField det_grad_A(const VectorField& delta);

/// (grad A)^{-1} zeta(A).
VectorField cauchy_vorticity(const eos::EquationOfState& eos, const VectorField& delta);
VectorField cauchy_vorticity(const VectorField& delta, const VectorField& phi,
                             fields::InterpolationScheme scheme = {});

/// omega_p = 1/2 eps_pil Det[zeta(A); dA/dx_i; dA/dx_l].
VectorField vorticity_from_determinants(const eos::EquationOfState& eos,
                                        const VectorField& delta);

/// L_j f = adj_ij df/dx_i (j zero-based), derivatives spectral, product
/// dealiased.
ScalarField label_derivative(const VectorField& delta, const ScalarField& f, int j);
/// L_j applied to the coordinate x_i through the periodic displacement:
/// delta_ij - L_j[delta_i].
ScalarField label_coordinate(const VectorField& delta, int i, int j);

using Shift = std::array<int, 3>;

/// C(x; z) = grad A(x + z) (grad A(x))^{-1} on a subsampled grid.
struct Calibrator {
  std::vector<Shift> offsets;
  std::vector<Shift> samples;
  /// values[s * offsets.size() + o]
  std::vector<Mat3> values;
  /// max over samples and offsets of |C - I|_F
  double summary = 0.0;

  const Mat3& value(std::size_t sample, std::size_t offset) const {
    return values[sample * offsets.size() + offset];
  }
};

/// Offsets are in grid steps. Samples every `stride`-th node per axis.
Calibrator calibrator(const VectorField& delta, const std::vector<Shift>& offsets,
                      int stride = 4);

/// (grad A)^T psi(A), not projected.
VectorField w_field(const VectorField& delta, const VectorField& psi,
                    fields::InterpolationScheme scheme = {});

/// xi^T (grad u) xi with xi = omega / |omega| where |omega| > 1e-8 max|omega|,
/// zero elsewhere.
ScalarField stretching_alpha(const VectorField& u, const VectorField& omega);

/// prod over m_k > 0 of sin^2(pi m_k A_k / L): L-periodic in every A_k.
using TestMode = std::array<int, 3>;
std::vector<TestMode> default_test_modes();
double test_function(const TestMode& m, const Vec3& a, double length);
/// Integral over the box of Phi_m(x + delta(x)), trapezoid rule.
double distribution_integral(const VectorField& delta, const TestMode& m);

/// Fixed-seed ensemble of band-limited vector fields (modes |m| <= 2).
std::vector<VectorField> psi_ensemble(const Grid& grid, int count, std::uint64_t seed);

struct DiagnosticsRecord {
  double t = 0.0;
  int chart_index = 0;
  double energy = 0.0;
  double helicity = 0.0;
  double sup_vorticity = 0.0;
  double bkm_integral = 0.0;
  double det_error = 0.0;
  double holder_grad_delta = 0.0;
  double sup_delta = 0.0;
  double cauchy_residual = 0.0;
  double omega_dot_w_drift = 0.0;
  std::vector<double> circulations;
  std::vector<double> distribution_check;
};

struct RecorderOptions {
  int psi_count = 8;
  std::uint64_t psi_seed = 20240601;
  std::vector<TestMode> test_modes = default_test_modes();
  fields::LoopQuadrature quadrature = fields::LoopQuadrature::kSpectral;
};

/// Computes DiagnosticsRecords along a run and accumulates the BKM integral
/// (trapezoid in time) across calls.
class Recorder {
 public:
  Recorder(const Grid& grid, RecorderOptions options = {});

  DiagnosticsRecord record(const evolve::ChartState& state,
                           std::span<const fields::MarkerLoop> loops = {});

  const std::vector<VectorField>& psi() const noexcept { return psi_; }

 private:
  struct ChartCache {
    int chart_index = -1;
    std::vector<std::unique_ptr<fields::FieldSampler>> psi;
    std::vector<std::unique_ptr<fields::FieldSampler>> zeta_dot_psi;
    std::vector<double> zeta_dot_psi_sup;
  };

  void prepare_chart(const evolve::ChartState& state);

  Grid grid_;
  RecorderOptions options_;
  std::vector<VectorField> psi_;
  ChartCache cache_;
  bool has_last_ = false;
  double last_t_ = 0.0;
  double last_sup_ = 0.0;
  double bkm_ = 0.0;
};

}  // namespace labelflow::diagnostics
