#pragma once

#include <complex>
#include <vector>

namespace fmstab {

/// In-place iterative radix-2 complex FFT. sign = -1 forward, +1 inverse.
/// No normalization is applied; n must be a power of two.
void fft(std::vector<std::complex<double>>& a, int sign);

/// 2D transform of a row-major n-by-n array (rows first, then columns).
void fft2(std::vector<std::complex<double>>& a, int n, int sign);

/// Smallest power of two >= n.
int next_pow2(int n);

}  // namespace fmstab
