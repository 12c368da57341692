#include "fmstab/products.hpp"

#include <cmath>
#include <stdexcept>

#include "fmstab/fft.hpp"

namespace fmstab {

namespace {

// 10-point Gauss-Legendre on [-1, 1]
const double kGlNodes[10] = {-0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
                             -0.4333953941292472, -0.1488743389816312, 0.1488743389816312,
                             0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
                             0.9739065285171717};
const double kGlWeights[10] = {0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
                               0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
                               0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                               0.0666713443086881};

SpectralField advect_2d(const SpectralField& u, const SpectralField& v);

}  // namespace

TrigSeries1D to_series(const SpectralField& u) {
    const Basis& b = u.basis;
    TrigSeries1D s;
    s.length = b.length();
    const double a = std::sqrt(2.0 / b.length());
    if (b.kind() == BasisKind::SineDirichlet1D) {
        s.freq_unit = M_PI / b.length();
        s.cos_c.assign(static_cast<std::size_t>(b.modes()) + 1, 0.0);
        s.sin_c.assign(static_cast<std::size_t>(b.modes()) + 1, 0.0);
        for (int k = 1; k <= b.modes(); ++k)
            s.sin_c[static_cast<std::size_t>(k)] = a * u.coeffs[static_cast<std::size_t>(k - 1)];
    } else if (b.kind() == BasisKind::PeriodicZeroMean1D) {
        s.freq_unit = 2.0 * M_PI / b.length();
        s.cos_c.assign(static_cast<std::size_t>(b.modes()) + 1, 0.0);
        s.sin_c.assign(static_cast<std::size_t>(b.modes()) + 1, 0.0);
        for (int j = 1; j <= b.modes(); ++j) {
            s.cos_c[static_cast<std::size_t>(j)] = a * u.coeffs[static_cast<std::size_t>(2 * j - 2)];
            s.sin_c[static_cast<std::size_t>(j)] = a * u.coeffs[static_cast<std::size_t>(2 * j - 1)];
        }
    } else {
        throw std::domain_error("to_series: 1D bases only");
    }
    return s;
}

TrigSeries1D series_derivative(const TrigSeries1D& a) {
    TrigSeries1D d = a;
    for (int m = 0; m <= a.degree(); ++m) {
        const double w = m * a.freq_unit;
        d.cos_c[static_cast<std::size_t>(m)] = w * a.sin_c[static_cast<std::size_t>(m)];
        d.sin_c[static_cast<std::size_t>(m)] = -w * a.cos_c[static_cast<std::size_t>(m)];
    }
    // d/dx [c cos(wx) + s sin(wx)] = -cw sin(wx) + sw cos(wx)
    return d;
}

TrigSeries1D series_multiply(const TrigSeries1D& a, const TrigSeries1D& b) {
    if (a.freq_unit != b.freq_unit || a.length != b.length)
        throw std::domain_error("series_multiply: incompatible series");
    TrigSeries1D r;
    r.length = a.length;
    r.freq_unit = a.freq_unit;
    const int dd = a.degree() + b.degree();
    r.cos_c.assign(static_cast<std::size_t>(dd) + 1, 0.0);
    r.sin_c.assign(static_cast<std::size_t>(dd) + 1, 0.0);
    for (int m = 0; m <= a.degree(); ++m) {
        const double ac = a.cos_c[static_cast<std::size_t>(m)];
        const double as = a.sin_c[static_cast<std::size_t>(m)];
        if (ac == 0.0 && as == 0.0) continue;
        for (int n = 0; n <= b.degree(); ++n) {
            const double bc = b.cos_c[static_cast<std::size_t>(n)];
            const double bs = b.sin_c[static_cast<std::size_t>(n)];
            if (bc == 0.0 && bs == 0.0) continue;
            const int p = m + n;
            const int d = m - n;
            const int ad = std::abs(d);
            if (ac != 0.0 && bc != 0.0) {
                r.cos_c[static_cast<std::size_t>(p)] += 0.5 * ac * bc;
                r.cos_c[static_cast<std::size_t>(ad)] += 0.5 * ac * bc;
            }
            if (as != 0.0 && bs != 0.0) {
                r.cos_c[static_cast<std::size_t>(ad)] += 0.5 * as * bs;
                r.cos_c[static_cast<std::size_t>(p)] -= 0.5 * as * bs;
            }
            if (as != 0.0 && bc != 0.0) {
                r.sin_c[static_cast<std::size_t>(p)] += 0.5 * as * bc;
                if (d > 0) r.sin_c[static_cast<std::size_t>(d)] += 0.5 * as * bc;
                if (d < 0) r.sin_c[static_cast<std::size_t>(-d)] -= 0.5 * as * bc;
            }
            if (ac != 0.0 && bs != 0.0) {
                r.sin_c[static_cast<std::size_t>(p)] += 0.5 * ac * bs;
                if (d < 0) r.sin_c[static_cast<std::size_t>(-d)] += 0.5 * ac * bs;
                if (d > 0) r.sin_c[static_cast<std::size_t>(d)] -= 0.5 * ac * bs;
            }
        }
    }
    return r;
}

TrigSeries1D series_axpy(double alpha, const TrigSeries1D& a, double beta, const TrigSeries1D& b) {
    if (a.freq_unit != b.freq_unit || a.length != b.length)
        throw std::domain_error("series_axpy: incompatible series");
    TrigSeries1D r;
    r.length = a.length;
    r.freq_unit = a.freq_unit;
    const int dd = std::max(a.degree(), b.degree());
    r.cos_c.assign(static_cast<std::size_t>(dd) + 1, 0.0);
    r.sin_c.assign(static_cast<std::size_t>(dd) + 1, 0.0);
    for (int m = 0; m <= a.degree(); ++m) {
        r.cos_c[static_cast<std::size_t>(m)] += alpha * a.cos_c[static_cast<std::size_t>(m)];
        r.sin_c[static_cast<std::size_t>(m)] += alpha * a.sin_c[static_cast<std::size_t>(m)];
    }
    for (int m = 0; m <= b.degree(); ++m) {
        r.cos_c[static_cast<std::size_t>(m)] += beta * b.cos_c[static_cast<std::size_t>(m)];
        r.sin_c[static_cast<std::size_t>(m)] += beta * b.sin_c[static_cast<std::size_t>(m)];
    }
    return r;
}

TrigSeries1D series_constant(const SpectralField& like, double value) {
    TrigSeries1D s;
    s.length = like.basis.length();
    s.freq_unit = like.basis.kind() == BasisKind::SineDirichlet1D ? M_PI / s.length
                                                                  : 2.0 * M_PI / s.length;
    s.cos_c.assign(1, value);
    s.sin_c.assign(1, 0.0);
    return s;
}

TrigSeries1D series_polynomial(const TrigSeries1D& u, const std::vector<double>& poly) {
    if (poly.empty()) {
        TrigSeries1D z = u;
        z.cos_c.assign(1, 0.0);
        z.sin_c.assign(1, 0.0);
        return z;
    }
    TrigSeries1D r = u;
    r.cos_c.assign(1, poly.back());
    r.sin_c.assign(1, 0.0);
    for (int j = static_cast<int>(poly.size()) - 2; j >= 0; --j) {
        r = series_multiply(r, u);
        r.cos_c[0] += poly[static_cast<std::size_t>(j)];
    }
    return r;
}

SpectralField project_series(const TrigSeries1D& a, const Basis& b) {
    SpectralField out(b);
    const double l = b.length();
    const double nrm = std::sqrt(2.0 / l);
    if (b.kind() == BasisKind::SineDirichlet1D) {
        for (int k = 1; k <= b.modes(); ++k) {
            double v = 0.0;
            if (k <= a.degree()) v += a.sin_c[static_cast<std::size_t>(k)] * (l / 2.0);
            // integral of cos(m pi y) sin(k pi y) over (0,1): 2k/((k^2-m^2) pi), k+m odd
            for (int m = ((k % 2 == 0) ? 1 : 0); m <= a.degree(); m += 2) {
                const double cm = a.cos_c[static_cast<std::size_t>(m)];
                if (cm == 0.0) continue;
                v += cm * l * (2.0 * k) / ((static_cast<double>(k) * k - static_cast<double>(m) * m) * M_PI);
            }
            out.coeffs[static_cast<std::size_t>(k - 1)] = nrm * v;
        }
    } else if (b.kind() == BasisKind::PeriodicZeroMean1D) {
        for (int j = 1; j <= b.modes(); ++j) {
            const double cj = j <= a.degree() ? a.cos_c[static_cast<std::size_t>(j)] : 0.0;
            const double sj = j <= a.degree() ? a.sin_c[static_cast<std::size_t>(j)] : 0.0;
            out.coeffs[static_cast<std::size_t>(2 * j - 2)] = nrm * cj * (l / 2.0);
            out.coeffs[static_cast<std::size_t>(2 * j - 1)] = nrm * sj * (l / 2.0);
        }
    } else {
        throw std::domain_error("project_series: 1D bases only");
    }
    return out;
}

SpectralField nonlinear_product(const SpectralField& u, const SpectralField& v, ProductForm form) {
    if (u.basis != v.basis) throw std::domain_error("nonlinear_product: basis mismatch");
    const BasisKind kind = u.basis.kind();
    switch (form) {
        case ProductForm::UV: {
            if (kind == BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("nonlinear_product: UV is a scalar 1D form");
            return project_series(series_multiply(to_series(u), to_series(v)), u.basis);
        }
        case ProductForm::UDxV: {
            if (kind == BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("nonlinear_product: UDxV is a scalar 1D form");
            return project_series(series_multiply(to_series(u), series_derivative(to_series(v))),
                                  u.basis);
        }
        case ProductForm::Advection2D: {
            if (kind != BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("nonlinear_product: Advection2D needs the 2D vector basis");
            return advect_2d(u, v);
        }
    }
    throw std::logic_error("nonlinear_product: bad form");
}

namespace {

using cplx = std::complex<double>;

inline std::size_t bin(int k1, int k2, int ng) {
    const int i = ((k1 % ng) + ng) % ng;
    const int j = ((k2 % ng) + ng) % ng;
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ng) + static_cast<std::size_t>(j);
}

SpectralField advect_2d(const SpectralField& u, const SpectralField& v) {
    const Basis& b = u.basis;
    const double L = b.length();
    const int m = b.modes();
    const int ng = next_pow2(3 * m + 1);
    const std::size_t n2 = static_cast<std::size_t>(ng) * static_cast<std::size_t>(ng);

    std::vector<cplx> u1(n2), u2(n2), v1x(n2), v1y(n2), v2x(n2), v2y(n2);
    const double amp = std::sqrt(2.0) / (2.0 * L);
    for (int p = 1; p <= b.num_wavevecs(); ++p) {
        const WaveVec2& k = b.wavevec(2 * p - 1);
        const double kn = std::sqrt(static_cast<double>(k.norm2()));
        const double e1 = -k.k2 / kn, e2 = k.k1 / kn;
        const cplx cu = amp * cplx(u.coeffs[static_cast<std::size_t>(2 * p - 2)],
                                   -u.coeffs[static_cast<std::size_t>(2 * p - 1)]);
        const cplx cv = amp * cplx(v.coeffs[static_cast<std::size_t>(2 * p - 2)],
                                   -v.coeffs[static_cast<std::size_t>(2 * p - 1)]);
        const cplx d1 = cplx(0.0, 2.0 * M_PI * k.k1 / L);
        const cplx d2 = cplx(0.0, 2.0 * M_PI * k.k2 / L);
        const std::size_t ip = bin(k.k1, k.k2, ng);
        const std::size_t im = bin(-k.k1, -k.k2, ng);
        u1[ip] += e1 * cu;          u1[im] += std::conj(e1 * cu);
        u2[ip] += e2 * cu;          u2[im] += std::conj(e2 * cu);
        v1x[ip] += d1 * e1 * cv;    v1x[im] += std::conj(d1 * e1 * cv);
        v1y[ip] += d2 * e1 * cv;    v1y[im] += std::conj(d2 * e1 * cv);
        v2x[ip] += d1 * e2 * cv;    v2x[im] += std::conj(d1 * e2 * cv);
        v2y[ip] += d2 * e2 * cv;    v2y[im] += std::conj(d2 * e2 * cv);
    }
    for (auto* a : {&u1, &u2, &v1x, &v1y, &v2x, &v2y}) fft2(*a, ng, +1);

    std::vector<cplx> a1(n2), a2(n2);
    for (std::size_t i = 0; i < n2; ++i) {
        const double w1 = u1[i].real(), w2 = u2[i].real();
        a1[i] = cplx(w1 * v1x[i].real() + w2 * v1y[i].real(), 0.0);
        a2[i] = cplx(w1 * v2x[i].real() + w2 * v2y[i].real(), 0.0);
    }
    fft2(a1, ng, -1);
    fft2(a2, ng, -1);
    const double scale = 1.0 / static_cast<double>(n2);

    SpectralField out(b, u.time);
    for (int p = 1; p <= b.num_wavevecs(); ++p) {
        const WaveVec2& k = b.wavevec(2 * p - 1);
        const double kn = std::sqrt(static_cast<double>(k.norm2()));
        const double e1 = -k.k2 / kn, e2 = k.k1 / kn;
        const std::size_t ip = bin(k.k1, k.k2, ng);
        const cplx proj = scale * (a1[ip] * e1 + a2[ip] * e2);  // Leray projection
        out.coeffs[static_cast<std::size_t>(2 * p - 2)] = std::sqrt(2.0) * L * proj.real();
        out.coeffs[static_cast<std::size_t>(2 * p - 1)] = -std::sqrt(2.0) * L * proj.imag();
    }
    return out;
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double l, int panels) {
    double s = 0.0;
    const double h = l / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int q = 0; q < 10; ++q) s += kGlWeights[q] * f(mid + 0.5 * h * kGlNodes[q]);
    }
    return s * 0.5 * h;
}

double max_abs_on(const std::function<double(double)>& f, double lo, double hi, int samples) {
    if (!(hi >= lo)) throw std::invalid_argument("max_abs_on: bad interval");
    if (hi == lo) return std::abs(f(lo));
    const double h = (hi - lo) / samples;
    double best = -1.0;
    int besti = 0;
    for (int i = 0; i <= samples; ++i) {
        const double v = std::abs(f(lo + i * h));
        if (v > best) {
            best = v;
            besti = i;
        }
    }
    double a = lo + std::max(0, besti - 1) * h;
    double c = lo + std::min(samples, besti + 1) * h;
    for (int it = 0; it < 200; ++it) {
        const double m1 = a + (c - a) / 3.0;
        const double m2 = c - (c - a) / 3.0;
        if (std::abs(f(m1)) < std::abs(f(m2)))
            a = m1;
        else
            c = m2;
    }
    best = std::max(best, std::abs(f(0.5 * (a + c))));
    best = std::max(best, std::max(std::abs(f(lo)), std::abs(f(hi))));
    return best;
}

}  // namespace fmstab
