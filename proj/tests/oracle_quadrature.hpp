#pragma once

// Independent quadrature oracle for Galerkin coefficients. Evaluates basis
// functions from their closed forms (not through the library's evaluators)
// and integrates with composite Gauss-Legendre, so it cross-checks both the
// coefficient conventions and the product algebra.

#include <cmath>
#include <functional>
#include <vector>

#include "fmstab/field.hpp"

namespace oracle {

inline const double* gl20_nodes() {
    static const double n[20] = {
        -0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
        -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154195,
        -0.2277858511416451, -0.0765265211334973, 0.0765265211334973,  0.2277858511416451,
        0.3737060887154195,  0.5108670019508271,  0.6360536807265150,  0.7463319064601508,
        0.8391169718222188,  0.9122344282513259,  0.9639719272779138,  0.9931285991850949};
    return n;
}

inline const double* gl20_weights() {
    static const double w[20] = {
        0.0176140071391521, 0.0406014298003869, 0.0626720483341091, 0.0832767415767048,
        0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183820,
        0.1491729864726037, 0.1527533871307258, 0.1527533871307258, 0.1491729864726037,
        0.1420961093183820, 0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
        0.0832767415767048, 0.0626720483341091, 0.0406014298003869, 0.0176140071391521};
    return w;
}

/// Composite 20-point Gauss-Legendre over [0, l]; `points` is the rough
/// total evaluation budget (the spec's 1e4-point quadrature oracle).
inline double integrate(const std::function<double(double)>& f, double l, int points = 10000) {
    const int panels = std::max(1, points / 20);
    const double h = l / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int q = 0; q < 20; ++q) s += gl20_weights()[q] * f(mid + 0.5 * h * gl20_nodes()[q]);
    }
    return s * 0.5 * h;
}

/// Orthonormal real mode k of a 1D basis, from the closed forms.
inline double mode_1d(const fmstab::Basis& b, int k, double x) {
    const double l = b.length();
    const double a = std::sqrt(2.0 / l);
    if (b.kind() == fmstab::BasisKind::SineDirichlet1D) return a * std::sin(k * M_PI * x / l);
    const int j = (k + 1) / 2;
    const double th = 2.0 * M_PI * j * x / l;
    return k % 2 == 1 ? a * std::cos(th) : a * std::sin(th);
}

inline double field_value(const fmstab::SpectralField& u, double x) {
    double s = 0.0;
    for (int k = 1; k <= u.size(); ++k)
        s += u.coeffs[static_cast<std::size_t>(k - 1)] * mode_1d(u.basis, k, x);
    return s;
}

inline double field_deriv(const fmstab::SpectralField& u, double x) {
    // centered high-order finite difference of the oracle evaluation
    const double h = 1e-5 * u.basis.length();
    const double f1 = field_value(u, x + h), f_1 = field_value(u, x - h);
    const double f2 = field_value(u, x + 2 * h), f_2 = field_value(u, x - 2 * h);
    return (8.0 * (f1 - f_1) - (f2 - f_2)) / (12.0 * h);
}

/// Expected Galerkin coefficients of the pointwise product u*v.
inline std::vector<double> product_coeffs(const fmstab::SpectralField& u,
                                          const fmstab::SpectralField& v, bool dx_on_v,
                                          int points = 20000) {
    std::vector<double> out(static_cast<std::size_t>(u.size()), 0.0);
    for (int k = 1; k <= u.size(); ++k) {
        out[static_cast<std::size_t>(k - 1)] = integrate(
            [&](double x) {
                const double vv = dx_on_v ? field_deriv(v, x) : field_value(v, x);
                return field_value(u, x) * vv * mode_1d(u.basis, k, x);
            },
            u.basis.length(), points);
    }
    return out;
}

/// 2D Stokes mode evaluation from the closed form.
inline void mode_2d(const fmstab::Basis& b, int k, double x, double y, double out[2]) {
    const fmstab::WaveVec2& kv = b.wavevec(k);
    const double L = b.length();
    const double kn = std::sqrt(static_cast<double>(kv.norm2()));
    const double th = 2.0 * M_PI * (kv.k1 * x + kv.k2 * y) / L;
    const double amp = (k % 2 == 1 ? std::cos(th) : std::sin(th)) * std::sqrt(2.0) / L;
    out[0] = -kv.k2 / kn * amp;
    out[1] = kv.k1 / kn * amp;
}

inline void vec_value(const fmstab::SpectralField& u, double x, double y, double out[2]) {
    out[0] = out[1] = 0.0;
    double w[2];
    for (int k = 1; k <= u.size(); ++k) {
        mode_2d(u.basis, k, x, y, w);
        out[0] += u.coeffs[static_cast<std::size_t>(k - 1)] * w[0];
        out[1] += u.coeffs[static_cast<std::size_t>(k - 1)] * w[1];
    }
}

/// Expected Galerkin coefficients of the Leray-projected (u . grad) v by 2D
/// tensor-product Gauss-Legendre quadrature. O(modes * points^2); keep the
/// fields small.
inline std::vector<double> advection_coeffs(const fmstab::SpectralField& u,
                                            const fmstab::SpectralField& v, int points1d = 48) {
    const double L = u.basis.length();
    const int n = points1d;
    std::vector<double> gx(static_cast<std::size_t>(n)), gw(static_cast<std::size_t>(n));
    // Gauss-Legendre is overkill on the torus; the trapezoid rule is exact
    // for trig polynomials, so use a uniform grid.
    for (int i = 0; i < n; ++i) {
        gx[static_cast<std::size_t>(i)] = i * L / n;
        gw[static_cast<std::size_t>(i)] = L / n;
    }
    const double hfd = 1e-6 * L;
    std::vector<double> out(static_cast<std::size_t>(u.size()), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = gx[static_cast<std::size_t>(i)], y = gx[static_cast<std::size_t>(j)];
            double uu[2], vpx[2], vmx[2], vpy[2], vmy[2];
            vec_value(u, x, y, uu);
            vec_value(v, x + hfd, y, vpx);
            vec_value(v, x - hfd, y, vmx);
            vec_value(v, x, y + hfd, vpy);
            vec_value(v, x, y - hfd, vmy);
            const double a1 = uu[0] * (vpx[0] - vmx[0]) / (2 * hfd) + uu[1] * (vpy[0] - vmy[0]) / (2 * hfd);
            const double a2 = uu[0] * (vpx[1] - vmx[1]) / (2 * hfd) + uu[1] * (vpy[1] - vmy[1]) / (2 * hfd);
            const double wgt = gw[static_cast<std::size_t>(i)] * gw[static_cast<std::size_t>(j)];
            double wm[2];
            for (int k = 1; k <= u.size(); ++k) {
                mode_2d(u.basis, k, x, y, wm);
                out[static_cast<std::size_t>(k - 1)] += wgt * (a1 * wm[0] + a2 * wm[1]);
            }
        }
    }
    return out;
}

}  // namespace oracle
