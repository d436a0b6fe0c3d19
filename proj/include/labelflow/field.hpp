#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "labelflow/grid.hpp"

namespace labelflow {

using Vec3 = std::array<double, 3>;
/// Row-major 3x3 matrix, m[a][b].
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm(const Vec3& a);
double determinant(const Mat3& m);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 identity3();
double frobenius(const Mat3& m);

/// Real samples of a scalar on a Grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double value = 0.0);

  template <class F>
  static ScalarField from_function(const Grid& grid, F&& f) {
    ScalarField out(grid);
    const int n = grid.n();
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          out.data_[grid.index(i, j, k)] =
              f(grid.coordinate(i), grid.coordinate(j), grid.coordinate(k));
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  double& operator[](std::size_t idx) noexcept { return data_[idx]; }
  double operator[](std::size_t idx) const noexcept { return data_[idx]; }
  double& at(int i, int j, int k) noexcept { return data_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const noexcept { return data_[grid_.index(i, j, k)]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  /// this += s * other
  ScalarField& axpy(double s, const ScalarField& other);

 private:
  Grid grid_;
  std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product (no dealiasing).
ScalarField multiply(const ScalarField& a, const ScalarField& b);

class VectorField {
 public:
  explicit VectorField(const Grid& grid);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  template <class F>
  static VectorField from_function(const Grid& grid, F&& f) {
    VectorField out(grid);
    const int n = grid.n();
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const Vec3 v = f(grid.coordinate(i), grid.coordinate(j), grid.coordinate(k));
          const std::size_t idx = grid.index(i, j, k);
          for (int c = 0; c < 3; ++c) out.comp_[c][idx] = v[c];
        }
    return out;
  }

  const Grid& grid() const noexcept { return comp_[0].grid(); }
  ScalarField& operator[](int c) noexcept { return comp_[c]; }
  const ScalarField& operator[](int c) const noexcept { return comp_[c]; }
  std::span<const ScalarField> components() const noexcept { return comp_; }

  Vec3 at(std::size_t idx) const noexcept {
    return {comp_[0][idx], comp_[1][idx], comp_[2][idx]};
  }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& other);

 private:
  std::array<ScalarField, 3> comp_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// 3x3 field; for Jacobians, (a, b) holds d f_a / d x_b.
class MatrixField {
 public:
  explicit MatrixField(const Grid& grid);

  const Grid& grid() const noexcept { return comp_[0].grid(); }
  ScalarField& operator()(int a, int b) noexcept { return comp_[3 * a + b]; }
  const ScalarField& operator()(int a, int b) const noexcept { return comp_[3 * a + b]; }
  std::span<const ScalarField> components() const noexcept { return comp_; }

  Mat3 at(std::size_t idx) const noexcept;
  void set(std::size_t idx, const Mat3& m) noexcept;

  MatrixField& operator-=(const MatrixField& other);

 private:
  std::array<ScalarField, 9> comp_;
};

/// Fourier coefficients of a real field in the half layout of Grid,
/// normalised so that f(x) = sum_k c_k exp(i k.x).
class SpectralField {
 public:
  using Complex = std::complex<double>;

  explicit SpectralField(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<Complex> coefficients() noexcept { return coeffs_; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  Complex* data() noexcept { return coeffs_.data(); }
  const Complex* data() const noexcept { return coeffs_.data(); }
  Complex& operator[](std::size_t idx) noexcept { return coeffs_[idx]; }
  const Complex& operator[](std::size_t idx) const noexcept { return coeffs_[idx]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

using SpectralVector = std::array<SpectralField, 3>;

// Reductions. Integrals use the trapezoid rule, which is the exact spectral
// mean on the torus.
double max_abs(const ScalarField& f);
double sup_norm(const VectorField& v);
double sup_norm(const MatrixField& m);
double mean(const ScalarField& f);
double integral(const ScalarField& f);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double l2_norm(const MatrixField& m);
ScalarField dot(const VectorField& a, const VectorField& b);
ScalarField magnitude(const VectorField& v);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);

}  // namespace labelflow
