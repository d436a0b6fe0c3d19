#include "labelflow/interpolation.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "labelflow/error.hpp"
#include "labelflow/fft.hpp"
#include "labelflow/spectral.hpp"

namespace labelflow::fields {
namespace {

using Complex = std::complex<double>;
constexpr int kMaxStencil = 16;

inline int wrap(int i, int n) {
  const int r = i % n;
  return r < 0 ? r + n : r;
}

// Lagrange basis on nodes {-p/2+1, ..., p/2} evaluated at theta in [0, 1).
// At theta == 0 the weights are exactly (0, .., 1, .., 0).
struct LagrangeTable {
  double inv_den[kMaxStencil + 1][kMaxStencil];
  LagrangeTable() {
    for (int p = 2; p <= kMaxStencil; p += 2) {
      const int lo = -p / 2 + 1;
      for (int a = 0; a < p; ++a) {
        double den = 1.0;
        for (int b = 0; b < p; ++b)
          if (b != a) den *= (lo + a) - (lo + b);
        inv_den[p][a] = 1.0 / den;
      }
    }
  }
};

const LagrangeTable kLagrange;

void lagrange_weights(int p, double theta, double* w) {
  const int lo = -p / 2 + 1;
  double diff[kMaxStencil] = {}, prefix[kMaxStencil + 1], suffix[kMaxStencil + 1];
  for (int a = 0; a < p; ++a) diff[a] = theta - (lo + a);
  prefix[0] = 1.0;
  for (int a = 0; a < p; ++a) prefix[a + 1] = prefix[a] * diff[a];
  suffix[p] = 1.0;
  for (int a = p - 1; a >= 0; --a) suffix[a] = suffix[a + 1] * diff[a];
  for (int a = 0; a < p; ++a) w[a] = prefix[a] * suffix[a + 1] * kLagrange.inv_den[p][a];
}

}  // namespace

void InterpolationScheme::validate() const {
  if (stencil < 2 || stencil > kMaxStencil || stencil % 2 != 0) {
    throw Error(ErrorKind::kBadParameters,
                "interpolation stencil must be even in [2, 16], got " +
                    std::to_string(stencil));
  }
  if (upsample < 1 || upsample > 8) {
    throw Error(ErrorKind::kBadParameters,
                "interpolation upsample factor must be in [1, 8], got " +
                    std::to_string(upsample));
  }
}

ScalarField refine(const ScalarField& f, int factor) {
  if (factor == 1) return f;
  const Grid& coarse = f.grid();
  const int n = coarse.n();
  const Grid fine(n * factor, coarse.length());
  const int nf = fine.n();
  const SpectralField c = spectral::forward(f);
  SpectralField g(fine);

  const int nyq = n / 2;
  auto axis_weight = [nyq](int m) { return (m == nyq || m == -nyq) ? 0.5 : 1.0; };
  for (int mz = -nyq; mz <= nyq; ++mz) {
    const int cz = wrap(mz, n), fz = wrap(mz, nf);
    for (int my = -nyq; my <= nyq; ++my) {
      const int cy = wrap(my, n), fy = wrap(my, nf);
      const double wyz = axis_weight(my) * axis_weight(mz);
      for (int mx = 0; mx <= nyq; ++mx) {
        g[fine.spectral_index(mx, fy, fz)] =
            wyz * axis_weight(mx) * c[coarse.spectral_index(mx, cy, cz)];
      }
    }
  }
  return spectral::inverse(g);
}

// ---------------------------------------------------------------------------
// FieldSampler

FieldSampler::FieldSampler(std::span<const ScalarField> components,
                           InterpolationScheme scheme)
    : grid_(components.empty() ? Grid(8) : components.front().grid()),
      scheme_(scheme),
      fine_n_(grid_.n() * scheme.upsample),
      fine_spacing_(grid_.length() / (grid_.n() * scheme.upsample)) {
  scheme_.validate();
  if (components.empty()) {
    throw Error(ErrorKind::kBadParameters, "FieldSampler needs at least one component");
  }
  // Ghost layers of width p/2 on every side so stencils never wrap.
  const int ghost = scheme_.stencil / 2;
  padded_n_ = fine_n_ + 2 * ghost;
  const std::size_t pn = static_cast<std::size_t>(padded_n_);
  for (const auto& c : components) {
    require_same_grid(grid_, c.grid(), "FieldSampler");
    coarse_.emplace_back(c.values().begin(), c.values().end());
    const ScalarField fine = refine(c, scheme_.upsample);
    std::vector<double> padded(pn * pn * pn);
    for (int k = 0; k < padded_n_; ++k) {
      const int fk = wrap(k - ghost, fine_n_);
      for (int j = 0; j < padded_n_; ++j) {
        const int fj = wrap(j - ghost, fine_n_);
        double* row = padded.data() + (k * pn + j) * pn;
        for (int i = 0; i < padded_n_; ++i) row[i] = fine.at(wrap(i - ghost, fine_n_), fj, fk);
      }
    }
    fine_.push_back(std::move(padded));
  }
}

FieldSampler::FieldSampler(const ScalarField& f, InterpolationScheme scheme)
    : FieldSampler(std::span<const ScalarField>(&f, 1), scheme) {}

FieldSampler::FieldSampler(const VectorField& f, InterpolationScheme scheme)
    : FieldSampler(f.components(), scheme) {}

namespace {

// Stencil origin in padded coordinates and per-axis weights.
struct Stencil {
  int x0, y0, z0;
  double wx[kMaxStencil], wy[kMaxStencil], wz[kMaxStencil];
};

// u is the position in fine-grid index units.
inline void build_stencil(const Vec3& u, int p, int nf, Stencil& s) {
  // base + lo + ghost with lo = -p/2 + 1 and ghost = p/2.
  int* origin[3] = {&s.x0, &s.y0, &s.z0};
  double* w[3] = {s.wx, s.wy, s.wz};
  for (int a = 0; a < 3; ++a) {
    const double fl = std::floor(u[a]);
    lagrange_weights(p, u[a] - fl, w[a]);
    *origin[a] = wrap(static_cast<int>(fl), nf) + 1;
  }
}

// Independent accumulators per row keep the multiply-adds from forming one
// long dependency chain.
template <int P>
inline double apply_fixed(const Stencil& s, std::size_t pn, const double* data) {
  double acc = 0.0;
  for (int c = 0; c < P; ++c) {
    if (s.wz[c] == 0.0) continue;
    const double* base =
        data + (static_cast<std::size_t>(s.z0 + c) * pn + s.y0) * pn + s.x0;
    double ay[P] = {};
    for (int a = 0; a < P; ++a) {
      const double w = s.wx[a];
      for (int b = 0; b < P; ++b) ay[b] += w * base[b * pn + a];
    }
    double sy = 0.0;
    for (int b = 0; b < P; ++b) sy += s.wy[b] * ay[b];
    acc += s.wz[c] * sy;
  }
  return acc;
}

inline double apply_stencil(const Stencil& s, int p, std::size_t pn, const double* data) {
  switch (p) {
    case 4: return apply_fixed<4>(s, pn, data);
    case 6: return apply_fixed<6>(s, pn, data);
    case 8: return apply_fixed<8>(s, pn, data);
    default: break;
  }
  double acc = 0.0;
  for (int c = 0; c < p; ++c) {
    if (s.wz[c] == 0.0) continue;
    double acc_y = 0.0;
    const double* plane = data + static_cast<std::size_t>(s.z0 + c) * pn * pn;
    for (int b = 0; b < p; ++b) {
      if (s.wy[b] == 0.0) continue;
      const double* row = plane + static_cast<std::size_t>(s.y0 + b) * pn + s.x0;
      double acc_x = 0.0;
      for (int a = 0; a < p; ++a) acc_x += s.wx[a] * row[a];
      acc_y += s.wy[b] * acc_x;
    }
    acc += s.wz[c] * acc_y;
  }
  return acc;
}

}  // namespace

void FieldSampler::sample(const Vec3& x, std::span<double> out) const {
  const double h = grid_.spacing();
  const Vec3 uc{x[0] / h, x[1] / h, x[2] / h};
  const Vec3 rc{std::nearbyint(uc[0]), std::nearbyint(uc[1]), std::nearbyint(uc[2])};
  constexpr double kNodeTol = 1e-12;
  if (std::abs(uc[0] - rc[0]) <= kNodeTol && std::abs(uc[1] - rc[1]) <= kNodeTol &&
      std::abs(uc[2] - rc[2]) <= kNodeTol) {
    const int n = grid_.n();
    const std::size_t idx = grid_.index(wrap(static_cast<int>(rc[0]), n),
                                        wrap(static_cast<int>(rc[1]), n),
                                        wrap(static_cast<int>(rc[2]), n));
    for (int c = 0; c < components(); ++c) out[c] = coarse_[c][idx];
    return;
  }
  Stencil s;
  const Vec3 u{x[0] / fine_spacing_, x[1] / fine_spacing_, x[2] / fine_spacing_};
  build_stencil(u, scheme_.stencil, fine_n_, s);
  for (int c = 0; c < components(); ++c)
    out[c] = apply_stencil(s, scheme_.stencil, padded_n_, fine_[c].data());
}

std::vector<ScalarField> FieldSampler::compose(const VectorField& delta) const {
  require_same_grid(grid_, delta.grid(), "compose");
  const int n = grid_.n();
  const int r = scheme_.upsample;
  const int p = scheme_.stencil;
  const int ncomp = components();
  std::vector<ScalarField> out(ncomp, ScalarField(grid_));
  const double inv_h = 1.0 / fine_spacing_;
  const std::size_t pn = static_cast<std::size_t>(padded_n_);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int k = 0; k < n; ++k) {
    Stencil s;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t idx = grid_.index(i, j, k);
        const double dx = delta[0][idx], dy = delta[1][idx], dz = delta[2][idx];
        if (dx == 0.0 && dy == 0.0 && dz == 0.0) {
          for (int c = 0; c < ncomp; ++c) out[c][idx] = coarse_[c][idx];
          continue;
        }
        const Vec3 u{static_cast<double>(i * r) + dx * inv_h,
                     static_cast<double>(j * r) + dy * inv_h,
                     static_cast<double>(k * r) + dz * inv_h};
        build_stencil(u, p, fine_n_, s);
        for (int c = 0; c < ncomp; ++c) out[c][idx] = apply_stencil(s, p, pn, fine_[c].data());
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

VectorField compose(const VectorField& f, const VectorField& delta,
                    InterpolationScheme scheme) {
  auto parts = FieldSampler(f, scheme).compose(delta);
  return VectorField(std::move(parts[0]), std::move(parts[1]), std::move(parts[2]));
}

ScalarField compose(const ScalarField& f, const VectorField& delta,
                    InterpolationScheme scheme) {
  return std::move(FieldSampler(f, scheme).compose(delta)[0]);
}

std::vector<Vec3> interpolate_at(const VectorField& f, std::span<const Vec3> points,
                                 InterpolationScheme scheme) {
  const FieldSampler sampler(f, scheme);
  std::vector<Vec3> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) sampler.sample(points[i], out[i]);
  return out;
}

std::vector<double> interpolate_at(const ScalarField& f, std::span<const Vec3> points,
                                   InterpolationScheme scheme) {
  const FieldSampler sampler(f, scheme);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    sampler.sample(points[i], std::span<double>(&out[i], 1));
  return out;
}

// ---------------------------------------------------------------------------
// Exact trigonometric evaluation

namespace {

struct NonzeroMode {
  int kx, ky, kz;
  double weight;
  Complex value;
};

std::vector<NonzeroMode> nonzero_modes(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  std::vector<NonzeroMode> modes;
  spectral::for_each_mode(g, [&](std::size_t idx, int kx, int my, int mz) {
    if (f[idx] == Complex(0.0, 0.0)) return;
    const double w = (kx == 0 || 2 * kx == n) ? 1.0 : 2.0;
    modes.push_back({kx, wrap(my, n), wrap(mz, n), w, f[idx]});
  });
  return modes;
}

// basis[a][idx] = exp(i m k0 x_a), or cos(...) on the Nyquist index.
void axis_basis(const Grid& g, const Vec3& x, std::vector<Complex> (&basis)[3]) {
  const int n = g.n();
  const double k0 = g.base_wavenumber();
  for (int a = 0; a < 3; ++a) {
    basis[a].resize(n);
    for (int idx = 0; idx < n; ++idx) {
      const int m = g.mode(idx);
      const double phase = k0 * m * x[a];
      basis[a][idx] = 2 * m == n ? Complex(std::cos(phase), 0.0)
                                 : Complex(std::cos(phase), std::sin(phase));
    }
  }
}

double evaluate_modes(const std::vector<NonzeroMode>& modes, const Grid& g, const Vec3& x) {
  std::vector<Complex> basis[3];
  axis_basis(g, x, basis);
  double sum = 0.0;
  for (const auto& m : modes)
    sum += m.weight * (m.value * basis[0][m.kx] * basis[1][m.ky] * basis[2][m.kz]).real();
  return sum;
}

}  // namespace

double evaluate_exact(const SpectralField& f, const Vec3& x) {
  return evaluate_modes(nonzero_modes(f), f.grid(), x);
}

VectorField compose_exact(const VectorField& f, const VectorField& delta) {
  const Grid& g = f.grid();
  require_same_grid(g, delta.grid(), "compose_exact");
  const SpectralVector fh = spectral::forward(f);
  const std::vector<NonzeroMode> modes[3] = {nonzero_modes(fh[0]), nonzero_modes(fh[1]),
                                             nonzero_modes(fh[2])};
  VectorField out(g);
  const int n = g.n();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t idx = g.index(i, j, k);
        const Vec3 x{g.coordinate(i) + delta[0][idx], g.coordinate(j) + delta[1][idx],
                     g.coordinate(k) + delta[2][idx]};
        for (int c = 0; c < 3; ++c) out[c][idx] = evaluate_modes(modes[c], g, x);
      }
  return out;
}

}  // namespace labelflow::fields
