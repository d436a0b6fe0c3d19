#pragma once

#include <complex>

namespace labelflow::fft {

// Thin wrappers over cached FFTW plans for n^3 real <-> half-complex
// transforms. `forward` divides by n^3 so the output holds Fourier
// coefficients; `inverse` is unnormalised and leaves its input untouched.
void forward(int n, const double* in, std::complex<double>* out);
void inverse(int n, const std::complex<double>* in, double* out);

}  // namespace labelflow::fft
