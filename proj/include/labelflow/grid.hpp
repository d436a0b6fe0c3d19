#pragma once

#include <cstddef>
#include <numbers>

namespace labelflow {

/// Uniform periodic cubic lattice with n nodes per axis and period L.
///
/// Real-space samples are stored x-fastest: index = (k*n + j)*n + i.
/// Spectral coefficients use the real-to-complex half layout of the same
/// ordering, (kz*n + ky)*(n/2+1) + kx with kx in [0, n/2].
class Grid {
 public:
  /// Requires n even and >= 8, length > 0.
  explicit Grid(int n, double length = 2.0 * std::numbers::pi);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return spacing_; }
  double cell_volume() const noexcept { return spacing_ * spacing_ * spacing_; }
  double volume() const noexcept { return length_ * length_ * length_; }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  int half() const noexcept { return n_ / 2 + 1; }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * n_ * half();
  }

  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(k) * n_ + j) * n_ + i;
  }
  std::size_t spectral_index(int kx, int ky, int kz) const noexcept {
    return (static_cast<std::size_t>(kz) * n_ + ky) * half() + kx;
  }

  /// Signed integer mode for a storage index along a full axis.
  int mode(int idx) const noexcept { return idx <= n_ / 2 ? idx : idx - n_; }
  /// 2*pi/L.
  double base_wavenumber() const noexcept { return 2.0 * std::numbers::pi / length_; }
  /// Wavenumber used by derivative operators; the Nyquist mode maps to 0.
  double derivative_wavenumber(int idx) const noexcept {
    const int m = mode(idx);
    return 2 * m == n_ ? 0.0 : base_wavenumber() * m;
  }
  double coordinate(int i) const noexcept { return spacing_ * i; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int n_;
  double length_;
  double spacing_;
};

/// Throws GridMismatch when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace labelflow
