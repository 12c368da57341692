#pragma once

#include <cstdint>
#include <vector>

#include "fmstab/basis.hpp"

namespace fmstab {

/// State vector in a spectral eigenbasis: real coefficients against the
/// orthonormal modes of its Basis, plus the simulation time it belongs to.
struct SpectralField {
    Basis basis;
    std::vector<double> coeffs;
    double time = 0.0;

    SpectralField() = default;
    explicit SpectralField(const Basis& b, double t = 0.0)
        : basis(b), coeffs(static_cast<std::size_t>(b.size()), 0.0), time(t) {}

    double& operator[](std::size_t i) { return coeffs[i]; }
    double operator[](std::size_t i) const { return coeffs[i]; }
    int size() const { return static_cast<int>(coeffs.size()); }

    /// L2 norm; Parseval makes this the coefficient norm.
    double norm_l2() const;
    /// ||grad u|| (H1 seminorm); differentiation is diagonal.
    double norm_h1() const;
    /// sum_{k>N} (u, w_k)^2  (tail energy beyond the first N modes)
    double tail_energy(int n) const;
    bool all_finite() const;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

double inner(const SpectralField& a, const SpectralField& b);

/// Keeps the N lowest-eigenvalue modes, zeroes the rest. Orthogonal
/// projection: idempotent, self-adjoint, linear.
SpectralField project_low_modes(const SpectralField& u, int n);

/// Single orthonormal mode k with the given amplitude.
SpectralField single_mode(const Basis& b, int k, double amplitude);

/// Coefficients amplitude * xi_k * k^{-decay_exponent}, xi_k standard normal
/// from the seeded generator. H1-regular for decay_exponent >= 2.
SpectralField random_smooth(const Basis& b, std::uint64_t seed, double decay_exponent,
                            double amplitude);

/// Point evaluation (1D kinds): value and spatial derivative at x.
double eval_1d(const SpectralField& u, double x);
double eval_dx_1d(const SpectralField& u, double x);

/// 2D kind: velocity components at (x, y).
void eval_2d(const SpectralField& u, double x, double y, double out[2]);

}  // namespace fmstab
