#include "labelflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "labelflow/error.hpp"

namespace labelflow {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) out[i][j] += a[i][m] * b[m][j];
  return out;
}

Mat3 identity3() { return Mat3{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

double frobenius(const Mat3& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(const Grid& grid, double value)
    : grid_(grid), data_(grid.size(), value) {}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "multiply");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(const Grid& grid)
    : comp_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : comp_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(comp_[0].grid(), comp_[1].grid(), "VectorField");
  require_same_grid(comp_[0].grid(), comp_[2].grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c] += other.comp_[c];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c] -= other.comp_[c];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : comp_) c *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c].axpy(s, other.comp_[c]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

// ---------------------------------------------------------------------------
// MatrixField

MatrixField::MatrixField(const Grid& grid)
    : comp_{ScalarField(grid), ScalarField(grid), ScalarField(grid),
            ScalarField(grid), ScalarField(grid), ScalarField(grid),
            ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

Mat3 MatrixField::at(std::size_t idx) const noexcept {
  Mat3 m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m[a][b] = comp_[3 * a + b][idx];
  return m;
}

void MatrixField::set(std::size_t idx, const Mat3& m) noexcept {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) comp_[3 * a + b][idx] = m[a][b];
}

MatrixField& MatrixField::operator-=(const MatrixField& other) {
  for (int c = 0; c < 9; ++c) comp_[c] -= other.comp_[c];
  return *this;
}

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(grid.spectral_size(), Complex(0.0, 0.0)) {}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Reductions

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const VectorField& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.grid().size(); ++i) {
    const double s = v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double sup_norm(const MatrixField& mf) {
  double m = 0.0;
  for (std::size_t i = 0; i < mf.grid().size(); ++i) {
    double s = 0.0;
    for (const auto& c : mf.components()) s += c[i] * c[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

double integral(const ScalarField& f) { return mean(f) * f.grid().volume(); }

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const VectorField& v) {
  const double a = l2_norm(v[0]), b = l2_norm(v[1]), c = l2_norm(v[2]);
  return std::sqrt(a * a + b * b + c * c);
}

double l2_norm(const MatrixField& m) {
  double s = 0.0;
  for (const auto& c : m.components()) {
    const double n = l2_norm(c);
    s += n * n;
  }
  return std::sqrt(s);
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid(), "dot");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  return out;
}

ScalarField magnitude(const VectorField& v) {
  ScalarField out(v.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::sqrt(v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]);
  return out;
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double v) { return std::isfinite(v); });
}

bool all_finite(const VectorField& v) {
  return all_finite(v[0]) && all_finite(v[1]) && all_finite(v[2]);
}

}  // namespace labelflow
