#include "fmstab/field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fmstab {

namespace {

void require_same_basis(const SpectralField& a, const SpectralField& b, const char* what) {
    if (a.basis != b.basis) throw std::domain_error(std::string(what) + ": basis mismatch");
}

}  // namespace

double SpectralField::norm_l2() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return std::sqrt(s);
}

double SpectralField::norm_h1() const {
    double s = 0.0;
    for (int k = 1; k <= size(); ++k) {
        const double c = coeffs[static_cast<std::size_t>(k - 1)];
        s += basis.eigenvalue(k) * c * c;
    }
    return std::sqrt(s);
}

double SpectralField::tail_energy(int n) const {
    double s = 0.0;
    for (int k = n + 1; k <= size(); ++k) {
        const double c = coeffs[static_cast<std::size_t>(k - 1)];
        s += c * c;
    }
    return s;
}

bool SpectralField::all_finite() const {
    for (double c : coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_basis(a, b, "operator+");
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_basis(a, b, "operator-");
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField r = a;
    for (double& c : r.coeffs) c *= s;
    return r;
}

double inner(const SpectralField& a, const SpectralField& b) {
    require_same_basis(a, b, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) s += a.coeffs[i] * b.coeffs[i];
    return s;
}

SpectralField project_low_modes(const SpectralField& u, int n) {
    if (n < 0 || n > u.size()) throw std::domain_error("project_low_modes: N out of range");
    SpectralField r = u;
    for (int k = n; k < r.size(); ++k) r.coeffs[static_cast<std::size_t>(k)] = 0.0;
    return r;
}

SpectralField single_mode(const Basis& b, int k, double amplitude) {
    if (k < 1 || k > b.size()) throw std::domain_error("single_mode: k out of range");
    SpectralField u(b);
    u.coeffs[static_cast<std::size_t>(k - 1)] = amplitude;
    return u;
}

SpectralField random_smooth(const Basis& b, std::uint64_t seed, double decay_exponent,
                            double amplitude) {
    SpectralField u(b);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> xi(0.0, 1.0);
    for (int k = 1; k <= b.size(); ++k) {
        u.coeffs[static_cast<std::size_t>(k - 1)] =
            amplitude * xi(gen) * std::pow(static_cast<double>(k), -decay_exponent);
    }
    return u;
}

double eval_1d(const SpectralField& u, double x) {
    const Basis& b = u.basis;
    const double l = b.length();
    double s = 0.0;
    if (b.kind() == BasisKind::SineDirichlet1D) {
        const double a = std::sqrt(2.0 / l);
        for (int k = 1; k <= b.modes(); ++k)
            s += u.coeffs[static_cast<std::size_t>(k - 1)] * a * std::sin(k * M_PI * x / l);
    } else if (b.kind() == BasisKind::PeriodicZeroMean1D) {
        const double a = std::sqrt(2.0 / l);
        for (int j = 1; j <= b.modes(); ++j) {
            const double th = 2.0 * M_PI * j * x / l;
            s += a * (u.coeffs[static_cast<std::size_t>(2 * j - 2)] * std::cos(th) +
                      u.coeffs[static_cast<std::size_t>(2 * j - 1)] * std::sin(th));
        }
    } else {
        throw std::domain_error("eval_1d: not a 1D basis");
    }
    return s;
}

double eval_dx_1d(const SpectralField& u, double x) {
    const Basis& b = u.basis;
    const double l = b.length();
    double s = 0.0;
    if (b.kind() == BasisKind::SineDirichlet1D) {
        const double a = std::sqrt(2.0 / l);
        for (int k = 1; k <= b.modes(); ++k) {
            const double w = k * M_PI / l;
            s += u.coeffs[static_cast<std::size_t>(k - 1)] * a * w * std::cos(k * M_PI * x / l);
        }
    } else if (b.kind() == BasisKind::PeriodicZeroMean1D) {
        const double a = std::sqrt(2.0 / l);
        for (int j = 1; j <= b.modes(); ++j) {
            const double w = 2.0 * M_PI * j / l;
            const double th = w * x;
            s += a * w * (-u.coeffs[static_cast<std::size_t>(2 * j - 2)] * std::sin(th) +
                          u.coeffs[static_cast<std::size_t>(2 * j - 1)] * std::cos(th));
        }
    } else {
        throw std::domain_error("eval_dx_1d: not a 1D basis");
    }
    return s;
}

void eval_2d(const SpectralField& u, double x, double y, double out[2]) {
    const Basis& b = u.basis;
    if (b.kind() != BasisKind::PeriodicZeroMean2DVector)
        throw std::domain_error("eval_2d: not a 2D basis");
    const double L = b.length();
    const double a = std::sqrt(2.0) / L;
    out[0] = out[1] = 0.0;
    for (int p = 1; p <= b.num_wavevecs(); ++p) {
        const WaveVec2& k = b.wavevec(2 * p - 1);
        const double kn = std::sqrt(static_cast<double>(k.norm2()));
        const double e1 = -k.k2 / kn, e2 = k.k1 / kn;  // k_perp / |k|
        const double th = 2.0 * M_PI * (k.k1 * x + k.k2 * y) / L;
        const double amp = u.coeffs[static_cast<std::size_t>(2 * p - 2)] * std::cos(th) +
                           u.coeffs[static_cast<std::size_t>(2 * p - 1)] * std::sin(th);
        out[0] += a * e1 * amp;
        out[1] += a * e2 * amp;
    }
}

}  // namespace fmstab
