// Radix-2 complex FFT. Deterministic fixed-order butterflies with per-thread
// twiddle tables, sized for the grids this project uses (n <= 2^16).
#pragma once

#include <complex>
#include <vector>

namespace wave {

using cvec = std::vector<std::complex<double>>;

// In-place transform. inverse=false: X_m = sum_j x_j e^{-2pi i jm/n}.
// inverse=true applies the conjugate transform and divides by n, so
// fft(fft(x)) with inverse=true round-trips. n must be a power of two.
void fft(cvec& a, bool inverse);

// Forward transform of real samples into a full complex spectrum.
cvec fft_real(const std::vector<double>& x);

// Inverse of fft_real: takes a spectrum, returns the real parts of the
// inverse transform (imaginary residue is the caller's roundoff to ignore).
std::vector<double> ifft_real(cvec spectrum);

}  // namespace wave
