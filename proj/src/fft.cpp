#include "fmstab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace fmstab {

void fft(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft2(std::vector<std::complex<double>>& a, int n, int sign) {
    if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("fft2: bad size");
    std::vector<std::complex<double>> tmp(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) tmp[c] = a[static_cast<std::size_t>(r) * n + c];
        fft(tmp, sign);
        for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(r) * n + c] = tmp[c];
    }
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) tmp[r] = a[static_cast<std::size_t>(r) * n + c];
        fft(tmp, sign);
        for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * n + c] = tmp[r];
    }
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace fmstab
