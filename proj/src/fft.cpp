#include "labelflow/fft.hpp"

#include <fftw3.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace labelflow::fft {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit PlanPair(int n) {
    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(cplx_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c_3d(n, n, n, r, c, flags);
    c2r = fftw_plan_dft_c2r_3d(n, n, n, c, r, flags);
    fftw_free(r);
    fftw_free(c);
  }
  ~PlanPair() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
};

// FFTW planning is not thread-safe; execution with the new-array API is.
const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  return *slot;
}

}  // namespace

void forward(int n, const double* in, std::complex<double>* out) {
  const PlanPair& p = plans_for(n);
  // r2c does not modify its input, but the FFTW signature is non-const.
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  const double scale = 1.0 / (static_cast<double>(n) * n * n);
  for (std::size_t i = 0; i < cplx_size; ++i) out[i] *= scale;
}

void inverse(int n, const std::complex<double>* in, double* out) {
  const PlanPair& p = plans_for(n);
  const std::size_t cplx_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  // c2r destroys its input.
  std::vector<std::complex<double>> scratch(in, in + cplx_size);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace labelflow::fft
