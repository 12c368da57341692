#include "fmstab/models.hpp"

#include <cmath>
#include <stdexcept>

#include "fmstab/products.hpp"

namespace fmstab {

namespace {

// 16-point Gauss-Legendre on [0, 1]
const double kGl16Nodes[16] = {
    0.005299532504175031, 0.027712488463383712, 0.067184398806084128, 0.122297795822498445,
    0.191061877798678115, 0.270991611171386371, 0.359198224610370542, 0.452493745081181288,
    0.547506254918818712, 0.640801775389629458, 0.729008388828613629, 0.808938122201321885,
    0.877702204177501555, 0.932815601193915872, 0.972287511536616288, 0.994700467495824969};
const double kGl16Weights[16] = {
    0.013576229705877047, 0.031126761969323946, 0.047579255841246392, 0.062314485627766936,
    0.074797994408288368, 0.084578259697501269, 0.091301707522461794, 0.094725305227534248,
    0.094725305227534248, 0.091301707522461794, 0.084578259697501269, 0.074797994408288368,
    0.062314485627766936, 0.047579255841246392, 0.031126761969323946, 0.013576229705877047};

bool is_even_integer(double m) {
    const double r = std::round(m);
    return std::abs(m - r) < 1e-12 && std::lround(r) % 2 == 0 && r >= 0.0;
}

}  // namespace

double NonlinearitySpec::eval(double s) const {
    switch (form) {
        case Form::Zero: return 0.0;
        case Form::Identity: return s;
        case Form::CubicMinusLinear: return s * s * s - s;
        case Form::Polynomial: {
            double r = 0.0;
            for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * s + *it;
            return r;
        }
    }
    return 0.0;
}

double NonlinearitySpec::deriv(double s) const {
    switch (form) {
        case Form::Zero: return 0.0;
        case Form::Identity: return 1.0;
        case Form::CubicMinusLinear: return 3.0 * s * s - 1.0;
        case Form::Polynomial: {
            double r = 0.0;
            for (int j = static_cast<int>(poly.size()) - 1; j >= 1; --j)
                r = r * s + j * poly[static_cast<std::size_t>(j)];
            return r;
        }
    }
    return 0.0;
}

std::vector<double> NonlinearitySpec::coefficients() const {
    switch (form) {
        case Form::Zero: return {};
        case Form::Identity: return {0.0, 1.0};
        case Form::CubicMinusLinear: return {0.0, -1.0, 0.0, 1.0};
        case Form::Polynomial: return poly;
    }
    return {};
}

void NonlinearitySpec::check_growth_condition(double range) const {
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double s = -range + 2.0 * range * i / n;
        const double fp = deriv(s);
        const double lo = -m0 + a * std::pow(std::abs(s), p);
        const double hi = m0 * (1.0 + std::pow(std::abs(s), p));
        const double slack = 1e-9 * (1.0 + std::abs(hi));
        if (fp < lo - slack || fp > hi + slack)
            throw std::domain_error("NonlinearitySpec: growth condition violated at s=" +
                                    std::to_string(s));
    }
}

double DampingSpec::eval(double s) const {
    double r = a1 * s;
    if (form == Form::LinearPlusPower) r += a2 * std::pow(std::abs(s), m) * s;
    return r;
}

double DampingSpec::gc1_a0() const {
    if (form == Form::Linear) return a1;
    return std::max(a1, a2 * (m + 1.0));
}

double DampingSpec::gc2_a2() const {
    if (form == Form::Linear) return 0.0;
    return a2 * std::pow(2.0, -m);
}

void DampingSpec::check_monotonicity(double range) const {
    const int n = 60;
    const double c2 = gc2_a2();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double s1 = -range + 2.0 * range * i / n;
            const double s2 = -range + 2.0 * range * j / n;
            const double d = s1 - s2;
            const double lhs = (eval(s1) - eval(s2)) * d;
            const double rhs = a1 * d * d + c2 * std::pow(std::abs(d), m + 2.0);
            if (lhs < rhs - 1e-9 * (1.0 + std::abs(rhs)))
                throw std::domain_error("DampingSpec: (gc2) violated on sampled pair");
        }
    }
    if (eval(0.0) != 0.0) throw std::domain_error("DampingSpec: g(0) != 0");
}

void ModelSpec::validate() const {
    switch (kind) {
        case ModelKind::NSV2D:
            if (basis.kind() != BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("NSV2D needs the 2D divergence-free basis");
            if (nu <= 0.0 || alpha <= 0.0) throw std::domain_error("NSV2D: nu, alpha must be > 0");
            break;
        case ModelKind::BBMB:
            if (basis.kind() == BasisKind::PeriodicZeroMean2DVector)
                throw std::domain_error("BBMB is scalar 1D");
            if (nu <= 0.0 || alpha <= 0.0) throw std::domain_error("BBMB: nu, alpha must be > 0");
            break;
        case ModelKind::KdVB:
            if (basis.kind() != BasisKind::PeriodicZeroMean1D)
                throw std::domain_error("KdVB needs the periodic zero-mean 1D basis");
            if (nu < 0.0) throw std::domain_error("KdVB: nu must be >= 0");
            break;
        case ModelKind::SDWave:
            if (basis.kind() != BasisKind::SineDirichlet1D)
                throw std::domain_error("SDWave needs the Dirichlet 1D basis");
            if (b <= 0.0 || nu <= 0.0) throw std::domain_error("SDWave: b, nu must be > 0");
            if (sdwave_eps < 0.0 || sdwave_eps > 0.5 * b)
                throw std::domain_error("SDWave: eps must lie in (0, b/2]");
            break;
        case ModelKind::NDWave:
            if (basis.kind() != BasisKind::SineDirichlet1D)
                throw std::domain_error("NDWave needs the Dirichlet 1D basis");
            if (nu <= 0.0) throw std::domain_error("NDWave: nu must be > 0");
            break;
    }
    if (h.size() != 0 && h.basis != basis) throw std::domain_error("ModelSpec: h basis mismatch");
}

SpectralField project_f(const NonlinearitySpec& f, const SpectralField& u) {
    if (f.is_zero()) return SpectralField(u.basis, u.time);
    return project_series(series_polynomial(to_series(u), f.coefficients()), u.basis);
}

SpectralField project_g(const DampingSpec& g, const SpectralField& w) {
    SpectralField out = g.a1 * w;
    if (g.form == DampingSpec::Form::Linear || g.a2 == 0.0) return out;
    if (is_even_integer(g.m)) {
        std::vector<double> poly(static_cast<std::size_t>(std::lround(g.m)) + 2, 0.0);
        poly.back() = g.a2;
        out = out + project_series(series_polynomial(to_series(w), poly), w.basis);
        return out;
    }
    // non-integer exponent: quadrature projection mode by mode
    const Basis& b = w.basis;
    const double l = b.length();
    const int panels = 8 * b.modes() + 8;
    for (int k = 1; k <= b.size(); ++k) {
        SpectralField wk = single_mode(b, k, 1.0);
        const double v = integrate_1d(
            [&](double x) {
                const double s = eval_1d(w, x);
                return g.a2 * std::pow(std::abs(s), g.m) * s * eval_1d(wk, x);
            },
            l, panels);
        out.coeffs[static_cast<std::size_t>(k - 1)] += v;
    }
    return out;
}

double integral_abs_pow(const SpectralField& u, double p) {
    const Basis& b = u.basis;
    if (b.kind() == BasisKind::PeriodicZeroMean2DVector) {
        const int n = 4 * b.modes() + 4;
        const double L = b.length();
        double s = 0.0;
        double vel[2];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                eval_2d(u, i * L / n, j * L / n, vel);
                s += std::pow(std::sqrt(vel[0] * vel[0] + vel[1] * vel[1]), p);
            }
        return s * L * L / (n * n);
    }
    return integrate_1d([&](double x) { return std::pow(std::abs(eval_1d(u, x)), p); }, b.length(),
                        8 * b.modes() + 8);
}

double nonlinearity_potential(const NonlinearitySpec& f, const SpectralField& phi,
                              const SpectralField& z) {
    if (f.is_zero()) return 0.0;
    const SpectralField f_phi = project_f(f, phi);
    double total = 0.0;
    for (int q = 0; q < 16; ++q) {
        const SpectralField w = phi + kGl16Nodes[q] * z;
        total += kGl16Weights[q] * inner(project_f(f, w) - f_phi, z);
    }
    return total;
}

RhsEval rhs(const ModelSpec& model, const ModelState& state) {
    model.validate();
    if (state.u.basis != model.basis) throw std::domain_error("rhs: state basis mismatch");
    if (model.second_order() && !state.ut.has_value())
        throw std::domain_error("rhs: second-order model needs du/dt");

    const Basis& b = model.basis;
    const int n = b.size();
    RhsEval out;
    out.mass.assign(static_cast<std::size_t>(n), 1.0);

    const bool has_h = model.h.size() != 0;
    switch (model.kind) {
        case ModelKind::NSV2D:
        case ModelKind::BBMB: {
            SpectralField r(b, state.u.time);
            for (int k = 1; k <= n; ++k) {
                const double lam = b.eigenvalue(k);
                out.mass[static_cast<std::size_t>(k - 1)] = 1.0 + model.alpha * model.alpha * lam;
                r.coeffs[static_cast<std::size_t>(k - 1)] =
                    -model.nu * lam * state.u.coeffs[static_cast<std::size_t>(k - 1)];
            }
            if (model.kind == ModelKind::NSV2D) {
                r = r - nonlinear_product(state.u, state.u, ProductForm::Advection2D);
            } else if (!model.f.is_zero()) {
                const TrigSeries1D fu = series_polynomial(to_series(state.u), model.f.coefficients());
                r = r - project_series(series_multiply(fu, series_derivative(to_series(state.u))), b);
            }
            if (has_h) r = r + model.h;
            out.rhs_u = std::move(r);
            break;
        }
        case ModelKind::KdVB: {
            SpectralField r(b, state.u.time);
            for (int j = 1; j <= b.modes(); ++j) {
                const double kap = 2.0 * M_PI * j / b.length();
                const double a = -model.nu * kap * kap;
                const double d = kap * kap * kap;
                const double x = state.u.coeffs[static_cast<std::size_t>(2 * j - 2)];
                const double y = state.u.coeffs[static_cast<std::size_t>(2 * j - 1)];
                r.coeffs[static_cast<std::size_t>(2 * j - 2)] = a * x + d * y;
                r.coeffs[static_cast<std::size_t>(2 * j - 1)] = a * y - d * x;
            }
            if (!model.f.is_zero()) {
                const TrigSeries1D fu = series_polynomial(to_series(state.u), model.f.coefficients());
                r = r - project_series(series_multiply(fu, series_derivative(to_series(state.u))), b);
            }
            if (has_h) r = r + model.h;
            out.rhs_u = std::move(r);
            break;
        }
        case ModelKind::SDWave:
        case ModelKind::NDWave: {
            out.rhs_u = *state.ut;
            SpectralField r(b, state.u.time);
            for (int k = 1; k <= n; ++k) {
                const double lam = b.eigenvalue(k);
                double v = -model.nu * lam * state.u.coeffs[static_cast<std::size_t>(k - 1)];
                if (model.kind == ModelKind::SDWave) {
                    v += model.lambda * state.u.coeffs[static_cast<std::size_t>(k - 1)];
                    v += -model.b * lam * state.ut->coeffs[static_cast<std::size_t>(k - 1)];
                }
                r.coeffs[static_cast<std::size_t>(k - 1)] = v;
            }
            if (!model.f.is_zero()) r = r - project_f(model.f, state.u);
            if (model.kind == ModelKind::NDWave) r = r - project_g(model.g, *state.ut);
            if (has_h) r = r + model.h;
            out.rhs_ut = std::move(r);
            break;
        }
    }
    return out;
}

EnergyReport energy(const ModelSpec& model, const ModelState& state, const EnergyOpts& opts) {
    EnergyReport rep;
    const SpectralField& u = state.u;
    const double l2 = u.norm_l2();
    const double h1 = u.norm_h1();
    switch (model.kind) {
        case ModelKind::NSV2D:
        case ModelKind::BBMB: {
            rep.components["l2_sq"] = l2 * l2;
            rep.components["h1_sq"] = h1 * h1;
            rep.total = l2 * l2 + model.alpha * model.alpha * h1 * h1;
            break;
        }
        case ModelKind::KdVB: {
            rep.components["l2_sq"] = l2 * l2;
            rep.total = l2 * l2;
            break;
        }
        case ModelKind::SDWave: {
            // E_eps of the error state (z, dz/dt); pass z as the state.
            if (!state.ut) throw std::domain_error("energy: SDWave needs (z, dz/dt)");
            const double eps = opts.eps > 0.0 ? opts.eps
                               : (model.sdwave_eps > 0.0 ? model.sdwave_eps : 0.5 * model.b);
            const Basis& basis = model.basis;
            double p_half = 0.0, low = 0.0, cross = 0.0;
            for (int k = 1; k <= basis.size(); ++k) {
                const double lam = basis.eigenvalue(k);
                const double zk = u.coeffs[static_cast<std::size_t>(k - 1)];
                const double ztk = state.ut->coeffs[static_cast<std::size_t>(k - 1)];
                p_half += ztk * ztk / lam;
                if (k <= opts.n) low += (1.0 / lam + 0.5 * eps) * zk * zk;
                cross += zk * ztk;
            }
            rep.components["p_half_zt_sq"] = p_half;
            rep.components["z_sq"] = l2 * l2;
            rep.components["low_mode"] = opts.mu * low;
            rep.components["grad_sq"] = h1 * h1;
            rep.components["cross"] = eps * cross;
            rep.total = p_half + l2 * l2 + opts.mu * low + 0.5 * eps * model.b * h1 * h1 +
                        eps * cross;
            break;
        }
        case ModelKind::NDWave: {
            if (!state.ut) throw std::domain_error("energy: NDWave needs (z, dz/dt)");
            const double zt = state.ut->norm_l2();
            double low = 0.0;
            for (int k = 1; k <= std::min(opts.n, u.size()); ++k) {
                const double zk = u.coeffs[static_cast<std::size_t>(k - 1)];
                low += zk * zk;
            }
            double pot = 0.0;
            if (opts.phi != nullptr)
                pot = nonlinearity_potential(model.f, *opts.phi, u);
            else
                pot = nonlinearity_potential(model.f, SpectralField(model.basis), u);
            rep.components["kinetic"] = 0.5 * zt * zt;
            rep.components["grad_sq_half"] = 0.5 * h1 * h1;
            rep.components["low_mode"] = 0.5 * opts.mu * low;
            rep.components["potential"] = pot;
            rep.total = 0.5 * zt * zt + 0.5 * h1 * h1 + 0.5 * opts.mu * low + pot;
            break;
        }
    }
    return rep;
}

}  // namespace fmstab
