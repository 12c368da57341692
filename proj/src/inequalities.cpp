#include "fmstab/inequalities.hpp"

#include <cmath>
#include <stdexcept>

#include "fmstab/products.hpp"

namespace fmstab {

namespace {

double lp_norm(const SpectralField& u, double p) {
    const Basis& b = u.basis;
    if (b.kind() == BasisKind::PeriodicZeroMean2DVector) {
        // uniform grid is spectrally exact for periodic trig polynomials
        const int n = 4 * b.modes() + 4;
        const double L = b.length();
        double s = 0.0;
        double vel[2];
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                eval_2d(u, i * L / n, j * L / n, vel);
                s += std::pow(vel[0] * vel[0] + vel[1] * vel[1], p / 2.0);
            }
        }
        return std::pow(s * L * L / (n * n), 1.0 / p);
    }
    const double l = b.length();
    const double val = integrate_1d([&](double x) { return std::pow(std::abs(eval_1d(u, x)), p); },
                                    l, 8 * b.modes() + 8);
    return std::pow(val, 1.0 / p);
}

double linf_norm_sq(const SpectralField& u) {
    const double m = max_abs_on([&](double x) { return eval_1d(u, x); }, 0.0, u.basis.length(),
                                64 * u.basis.modes());
    return m * m;
}

}  // namespace

void IneqConstants::validate() const {
    if (c0 <= 0.0 || b0 <= 0.0 || beta <= 0.0 || lambda1 < 0.0)
        throw std::invalid_argument("IneqConstants: all constants must be strictly positive");
}

IneqCheck check_inequality(Ineq which, const SpectralField& u, const IneqConstants& consts,
                           int n) {
    consts.validate();
    const double lam1 = consts.lambda1 > 0.0 ? consts.lambda1 : u.basis.lambda1();
    IneqCheck r;
    const double l2 = u.norm_l2();
    const double h1 = u.norm_h1();
    switch (which) {
        case Ineq::PF:
            r.lhs = l2 * l2;
            r.rhs = h1 * h1 / lam1;
            break;
        case Ineq::PFN: {
            if (n < 0 || n >= u.size()) throw std::domain_error("check_inequality: PFN needs 0 <= N < M");
            r.lhs = u.tail_energy(n);
            r.rhs = h1 * h1 / u.basis.eigenvalue(n + 1);
            break;
        }
        case Ineq::Agmon: {
            if (u.basis.kind() == BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("check_inequality: Agmon is 1D");
            r.lhs = linf_norm_sq(u);
            r.rhs = consts.c0 * l2 * h1;
            break;
        }
        case Ineq::Lad3: {
            const double l4 = lp_norm(u, 4.0);
            r.lhs = l4 * l4;
            r.rhs = consts.b0 * std::sqrt(l2) * std::pow(h1, 1.5);
            break;
        }
        case Ineq::GN: {
            if (u.basis.kind() == BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("check_inequality: GN is 1D");
            r.lhs = lp_norm(u, 4.0);
            r.rhs = consts.beta * std::pow(l2, 0.75) * std::pow(h1, 0.25);
            break;
        }
    }
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-10);
    return r;
}

}  // namespace fmstab
