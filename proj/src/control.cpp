#include "fmstab/control.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "fmstab/products.hpp"

namespace fmstab {

void ControllerSpec::validate(const Basis& basis) const {
    if (mu < 0.0) throw std::domain_error("ControllerSpec: mu must be >= 0");
    if (n < 1 || n > basis.size()) throw std::domain_error("ControllerSpec: N out of range");
}

SpectralField feedback(const ControllerSpec& ctrl, const SpectralField& u,
                       const SpectralField* ut, const SpectralField& v,
                       const SpectralField* vt) {
    if (u.basis != v.basis) throw std::domain_error("feedback: basis mismatch");
    const bool needs_velocity = ctrl.variant == ControllerVariant::TrackStatePlusVelocity;
    if (needs_velocity && (ut == nullptr || vt == nullptr))
        throw std::domain_error("feedback: velocity variant needs du/dt of both systems");
    SpectralField err = u - v;
    if (needs_velocity) err = err + (*ut - *vt);
    SpectralField out = project_low_modes(err, std::min(ctrl.n, err.size()));
    for (double& c : out.coeffs) c *= -ctrl.mu;
    return out;
}

namespace {

// Galerkin stiffness of the linearization: J_{kj} = nu lam_k d_kj + (f'(phi) w_j, w_k),
// assembled exactly from the trig series of f'(phi).
Eigen::MatrixXd stationary_jacobian(const ModelSpec& model, const SpectralField& phi) {
    const Basis& b = model.basis;
    const int m = b.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) J(k, k) = model.nu * b.eigenvalue(k + 1);

    const auto coeffs = model.f.coefficients();
    if (coeffs.size() >= 2) {
        std::vector<double> dcoeffs(coeffs.size() - 1);
        for (std::size_t j = 1; j < coeffs.size(); ++j)
            dcoeffs[j - 1] = static_cast<double>(j) * coeffs[j];
        const TrigSeries1D fp = series_polynomial(to_series(phi), dcoeffs);
        const double l = b.length();
        // C[m] = integral of f'(phi) cos(m pi x / l): cos part is diagonal,
        // the sin part projects through 2a/((a^2-m^2) pi) for a+m odd.
        const int dmax = 2 * m;
        std::vector<double> c(static_cast<std::size_t>(dmax) + 1, 0.0);
        for (int q = 0; q <= dmax; ++q) {
            double v = 0.0;
            if (q <= fp.degree()) v += fp.cos_c[static_cast<std::size_t>(q)] * (q == 0 ? l : l / 2.0);
            for (int a = (q % 2 == 0) ? 1 : 0; a <= fp.degree(); a += 2) {
                const double sa = fp.sin_c[static_cast<std::size_t>(a)];
                if (sa == 0.0) continue;
                v += sa * l * (2.0 * a) /
                     ((static_cast<double>(a) * a - static_cast<double>(q) * q) * M_PI);
            }
            c[static_cast<std::size_t>(q)] = v;
        }
        // w_k w_j = (1/l)[cos((k-j)theta) - cos((k+j)theta)]
        for (int k = 1; k <= m; ++k)
            for (int j = 1; j <= m; ++j)
                J(k - 1, j - 1) += (c[static_cast<std::size_t>(std::abs(k - j))] -
                                    c[static_cast<std::size_t>(k + j)]) /
                                   l;
    }
    return J;
}

Eigen::VectorXd stationary_residual(const ModelSpec& model, const SpectralField& phi) {
    const Basis& b = model.basis;
    const int m = b.size();
    const SpectralField pf = project_f(model.f, phi);
    Eigen::VectorXd g(m);
    for (int k = 1; k <= m; ++k) {
        double v = model.nu * b.eigenvalue(k) * phi.coeffs[static_cast<std::size_t>(k - 1)] +
                   pf.coeffs[static_cast<std::size_t>(k - 1)];
        if (model.h.size() != 0) v -= model.h.coeffs[static_cast<std::size_t>(k - 1)];
        g(k - 1) = v;
    }
    return g;
}

}  // namespace

SteadyStateResult steady_state_solve(const ModelSpec& model, const SpectralField& guess,
                                     double tol, int max_iter) {
    if (model.basis.kind() != BasisKind::SineDirichlet1D)
        throw std::domain_error("steady_state_solve: Dirichlet 1D basis only");
    if (guess.basis != model.basis) throw std::domain_error("steady_state_solve: basis mismatch");

    SteadyStateResult res;
    res.phi = guess;
    Eigen::VectorXd g = stationary_residual(model, res.phi);
    double gnorm = g.norm();
    for (int it = 0; it < max_iter; ++it) {
        if (gnorm < tol) {
            res.converged = true;
            break;
        }
        const Eigen::MatrixXd J = stationary_jacobian(model, res.phi);
        const Eigen::VectorXd step = J.partialPivLu().solve(-g);
        double scale = 1.0;
        SpectralField trial = res.phi;
        Eigen::VectorXd gt;
        double gtnorm = gnorm;
        for (int back = 0; back < 10; ++back) {
            trial = res.phi;
            for (int k = 0; k < trial.size(); ++k)
                trial.coeffs[static_cast<std::size_t>(k)] += scale * step(k);
            gt = stationary_residual(model, trial);
            gtnorm = gt.norm();
            if (gtnorm < (1.0 - 0.25 * scale) * gnorm || gtnorm < tol) break;
            scale *= 0.5;
        }
        res.phi = trial;
        g = gt;
        gnorm = gtnorm;
        res.iterations = it + 1;
    }
    res.converged = gnorm < tol;
    res.residual = gnorm;
    return res;
}

}  // namespace fmstab
