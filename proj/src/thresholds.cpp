#include "fmstab/thresholds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "fmstab/products.hpp"

namespace fmstab {

namespace {

const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::NSV2D: return "nsv2d";
        case ModelKind::BBMB: return "bbmb";
        case ModelKind::KdVB: return "kdvb";
        case ModelKind::SDWave: return "sdwave";
        case ModelKind::NDWave: return "ndwave";
    }
    return "?";
}

struct BbmbChain {
    double r2 = 0.0, d1 = 0.0, d2 = 0.0, mu_required = 0.0, gap = 0.0;
};

BbmbChain bbmb_chain(const NonlinearitySpec& f, double mu, double r1, double h_norm,
                     double lambda1, double cs) {
    BbmbChain c;
    c.r2 = mu * r1 + (2.0 / lambda1) * h_norm * h_norm;
    const double rad1 = cs * std::sqrt(c.r2);
    const double rad2 = cs * (std::sqrt(r1) + std::sqrt(c.r2));
    c.d1 = f.is_zero() ? 0.0 : max_abs_on([&](double s) { return f.eval(s); }, -rad1, rad1, 10000);
    c.d2 = f.is_zero() ? 0.0 : max_abs_on([&](double s) { return f.deriv(s); }, -rad2, rad2, 10000);
    if (!std::isfinite(c.d1) || !std::isfinite(c.d2))
        throw std::domain_error("bbmb_thresholds: D1/D2 maximization not finite on range");
    c.mu_required = 0.5 * c.d1 * c.d1 + c.d2 * std::sqrt(r1);
    c.gap = 2.0 * (c.d1 * c.d1 + 2.0 * c.d2 * std::sqrt(r1));
    return c;
}

struct KdvbChain {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
};

KdvbChain kdvb_chain(double mu, double rho1, double m0, double beta, double beta1, double h_norm,
                     double lambda1) {
    KdvbChain c;
    c.m1 = (mu * rho1 + h_norm * h_norm / lambda1) / lambda1;
    c.m2 = mu * m0 + beta1 * std::pow(c.m1, 11.0 / 7.0) + 2.0 * h_norm * h_norm;
    c.m3 = 2.0 * std::pow(beta, 4.0) * std::pow(lambda1, -0.75) * (m0 * m0 + 0.25 * c.m2 * c.m2);
    return c;
}

/// mu_next = F(mu) iterated from mu0 until the relative change is tiny.
FixedPointInfo run_fixed_point(const std::function<double(double)>& F, double mu0, double& mu_out) {
    FixedPointInfo fp;
    fp.used = true;
    double mu = mu0;
    fp.trace.push_back(mu);
    for (int it = 0; it < 500; ++it) {
        const double next = F(mu);
        fp.iterations = it + 1;
        fp.trace.push_back(next);
        if (!std::isfinite(next) || next > 1e12) {
            fp.converged = false;
            mu_out = std::numeric_limits<double>::quiet_NaN();
            return fp;
        }
        if (std::abs(next - mu) <= 1e-15 * std::max(1.0, std::abs(next))) {
            mu_out = next;
            return fp;
        }
        mu = next;
    }
    fp.converged = false;
    mu_out = std::numeric_limits<double>::quiet_NaN();
    return fp;
}

}  // namespace

int least_n_with_gap(const Basis& basis, double threshold, bool strict, int floor_n) {
    for (int n = floor_n; n <= 2000000; ++n) {
        const double lam = basis.eigenvalue(n + 1);
        if (strict ? (lam > threshold) : (lam >= threshold)) return n;
    }
    throw std::domain_error("least_n_with_gap: no admissible N found");
}

ThresholdReport nsv_thresholds(double nu, double alpha, double h_norm, double b0,
                               const Basis& basis, std::optional<double> mu,
                               std::optional<int> n) {
    if (nu <= 0.0 || alpha <= 0.0 || b0 <= 0.0 || h_norm < 0.0)
        throw std::domain_error("nsv_thresholds: inputs must be positive");
    ThresholdReport rep;
    rep.model = ModelKind::NSV2D;
    const double lam1 = basis.lambda1();
    const double d0 = 0.5 * nu * std::min(lam1, 1.0 / (alpha * alpha));
    const double r0 = 2.0 * h_norm * h_norm / (nu * lam1 * d0 * alpha * alpha);
    const double c1 = 0.25 * std::pow(3.0 / (2.0 * nu), 3.0);
    const double kappa = 0.25 * nu * std::min(lam1, 1.0 / (alpha * alpha));
    const double k0 = 1.0 + 1.0 / (alpha * alpha * lam1);
    rep.mu_min = c1 * r0 * r0 * std::pow(b0, 4.0);
    const double gap = 4.0 * c1 * r0 * r0 * std::pow(b0, 4.0) / nu;
    rep.n_min = least_n_with_gap(basis, gap, /*strict=*/true, /*floor_n=*/1);
    rep.mu = mu.value_or(rep.mu_min);
    rep.n = n.value_or(rep.n_min);
    const double lam_np1 = basis.eigenvalue(rep.n + 1);
    const double r1 = (2.0 / (d0 * alpha * alpha)) *
                      (rep.mu * r0 / (2.0 * lam1) + h_norm * h_norm / (nu * lam1));

    rep.constants = {{"lambda1", lam1},   {"d0", d0}, {"r0", r0},
                     {"r1", r1},          {"C1", c1}, {"kappa", kappa},
                     {"k0", k0},          {"b0", b0}, {"lambda_Np1", lam_np1},
                     {"gap_threshold", gap}};
    rep.conditions.push_back({"mu >= C1(nu) r0^2 b0^4", rep.mu, rep.mu_min, rep.mu >= rep.mu_min});
    const double tail = nu - 4.0 * c1 * r0 * r0 * std::pow(b0, 4.0) / lam_np1;
    rep.conditions.push_back({"nu - 4 lambda_{N+1}^{-1} C1 r0^2 b0^4 > 0", tail, 0.0, tail > 0.0});
    rep.rate_kind = "exponential";
    rep.rate = kappa;
    rep.rate_series = "grad_z";
    rep.certified = rep.conditions[0].satisfied && rep.conditions[1].satisfied;
    return rep;
}

ThresholdReport bbmb_thresholds(const NonlinearitySpec& f, double h_norm, const Basis& basis,
                                double sobolev_const, std::optional<double> mu,
                                std::optional<int> n, double fp_start) {
    if (h_norm < 0.0 || sobolev_const <= 0.0)
        throw std::domain_error("bbmb_thresholds: bad inputs");
    ThresholdReport rep;
    rep.model = ModelKind::BBMB;
    const double lam1 = basis.lambda1();
    const double kappa1 = std::min(0.5 * lam1, 1.0);
    const double r1 = 4.0 / (lam1 * kappa1);
    const double r1_sharp = 2.0 * h_norm * h_norm / (lam1 * kappa1);
    const double a0 = 0.25 * std::min(1.0, lam1);

    rep.fixed_point = run_fixed_point(
        [&](double m) { return bbmb_chain(f, m, r1, h_norm, lam1, sobolev_const).mu_required; },
        fp_start, rep.mu_min);
    if (rep.fixed_point.converged) {
        const auto cmin = bbmb_chain(f, rep.mu_min, r1, h_norm, lam1, sobolev_const);
        rep.n_min = least_n_with_gap(basis, cmin.gap, /*strict=*/false, /*floor_n=*/1);
    } else {
        rep.n_min = -1;
    }

    rep.mu = mu.value_or(rep.fixed_point.converged ? rep.mu_min : 0.0);
    rep.n = n.value_or(std::max(rep.n_min, 1));
    const auto c = bbmb_chain(f, rep.mu, r1, h_norm, lam1, sobolev_const);
    const double lam_np1 = basis.eigenvalue(rep.n + 1);

    rep.constants = {{"lambda1", lam1},      {"kappa1", kappa1}, {"R1", r1},
                     {"R1_sharp", r1_sharp}, {"R2", c.r2},       {"D1", c.d1},
                     {"D2", c.d2},           {"a0", a0},         {"lambda_Np1", lam_np1},
                     {"gap_threshold", c.gap}};
    rep.conditions.push_back({"lambda_{N+1}^{-1} (D1^2 + 2 D2 sqrt(R1)) <= 1/2",
                              (c.d1 * c.d1 + 2.0 * c.d2 * std::sqrt(r1)) / lam_np1, 0.5,
                              (c.d1 * c.d1 + 2.0 * c.d2 * std::sqrt(r1)) / lam_np1 <= 0.5});
    rep.conditions.push_back(
        {"mu >= D1^2/2 + D2 sqrt(R1)", rep.mu, c.mu_required, rep.mu >= c.mu_required});
    rep.rate_kind = "exponential";
    rep.rate = a0;
    rep.rate_series = "z_sq_h1";  // a0 bounds ||z||^2 + ||dx z||^2
    rep.certified = rep.fixed_point.converged && rep.conditions[0].satisfied &&
                    rep.conditions[1].satisfied;
    return rep;
}

ThresholdReport kdvb_thresholds(double h_norm, const Basis& basis, double beta,
                                std::optional<double> mu, std::optional<int> n, double fp_start) {
    if (h_norm < 0.0 || beta <= 0.0) throw std::domain_error("kdvb_thresholds: bad inputs");
    ThresholdReport rep;
    rep.model = ModelKind::KdVB;
    const double lam1 = basis.lambda1();
    const double h2 = h_norm * h_norm;
    const double rho1 = 2.0 * h2 / (lam1 * lam1);
    const double rho2 = std::pow(2.0, -1.0 / 3.0) *
                            std::pow(3.0 * std::pow(beta, 4.0) * std::pow(rho1, 7.0 / 4.0),
                                     4.0 / 3.0) +
                        5.0 * h2 + std::pow(lam1 / 3.0, 4.0) + 1.0;
    const double m0 = (8.0 / 3.0) * rho2 +
                      (16.0 / 15.0) *
                          std::pow(std::pow(beta, 3.0) * std::pow(rho1, 2.5) / 3.0, 5.0 / 4.0);
    const double beta1 = std::pow(beta, 24.0 / 7.0);

    rep.fixed_point = run_fixed_point(
        [&](double m) { return 0.5 * kdvb_chain(m, rho1, m0, beta, beta1, h_norm, lam1).m3; },
        fp_start, rep.mu_min);
    if (rep.fixed_point.converged) {
        const auto cmin = kdvb_chain(rep.mu_min, rho1, m0, beta, beta1, h_norm, lam1);
        rep.n_min = least_n_with_gap(basis, 2.0 * cmin.m3, /*strict=*/false, /*floor_n=*/1);
    } else {
        rep.n_min = -1;
    }

    rep.mu = mu.value_or(rep.fixed_point.converged ? rep.mu_min : 0.0);
    rep.n = n.value_or(std::max(rep.n_min, 1));
    const auto c = kdvb_chain(rep.mu, rho1, m0, beta, beta1, h_norm, lam1);
    const double lam_np1 = basis.eigenvalue(rep.n + 1);

    rep.constants = {{"lambda1", lam1}, {"rho1", rho1},        {"rho2", rho2},
                     {"M0", m0},        {"M1", c.m1},          {"M2", c.m2},
                     {"M3", c.m3},      {"beta1", beta1},      {"lambda_Np1", lam_np1}};
    rep.conditions.push_back({"M3 <= 2 mu", c.m3, 2.0 * rep.mu, c.m3 <= 2.0 * rep.mu});
    rep.conditions.push_back(
        {"M3 lambda_{N+1}^{-1} <= 1/2", c.m3 / lam_np1, 0.5, c.m3 / lam_np1 <= 0.5});
    rep.rate_kind = "exponential";
    rep.rate = 0.25 * lam1;  // from d/dt||z||^2 + (lambda1/2)||z||^2 <= 0
    rep.rate_series = "z_l2";
    rep.certified = rep.fixed_point.converged && rep.conditions[0].satisfied &&
                    rep.conditions[1].satisfied;
    return rep;
}

ThresholdReport sdwave_thresholds(double b, double nu, double a, double m0, int p,
                                  const Basis& basis, const SpectralField& z0,
                                  const SpectralField& z1, std::optional<double> mu,
                                  std::optional<int> n, double d0) {
    if (b <= 0.0 || nu <= 0.0) throw std::domain_error("sdwave_thresholds: b, nu must be > 0");
    ThresholdReport rep;
    rep.model = ModelKind::SDWave;
    rep.mu_min = a + 0.75 * b * b;
    const double gap = (2.0 * a + 0.75 * b * b) / nu;
    rep.n_min = least_n_with_gap(basis, gap, /*strict=*/false, /*floor_n=*/0);
    rep.mu = mu.value_or(rep.mu_min);
    rep.n = n.value_or(rep.n_min);
    const double lam_np1 = basis.eigenvalue(rep.n + 1);

    double low = 0.0;
    for (int k = 1; k <= std::min(rep.n, z0.size()); ++k) {
        const double c = z0.coeffs[static_cast<std::size_t>(k - 1)];
        low += c * c;
    }
    const double l2 = z0.norm_l2();
    const double e0 = 0.5 * z1.norm_l2() * z1.norm_l2() + 0.5 * nu * z0.norm_h1() * z0.norm_h1() +
                      (0.25 * b * b - 0.5 * a) * l2 * l2 +
                      integral_abs_pow(z0, static_cast<double>(p)) / p + 0.5 * rep.mu * low +
                      0.5 * b * inner(z0, z1);

    rep.constants = {{"lambda1", basis.lambda1()},
                     {"E0", e0},
                     {"a", a},
                     {"m0", m0},
                     {"p", static_cast<double>(p)},
                     {"d0", d0},
                     {"lambda_Np1", lam_np1},
                     {"gap_threshold", gap}};
    rep.conditions.push_back({"mu >= a + 3 b^2/4", rep.mu, rep.mu_min, rep.mu >= rep.mu_min});
    rep.conditions.push_back(
        {"nu >= (2a + 3 b^2/4) lambda_{N+1}^{-1}", nu, (2.0 * a + 0.75 * b * b) / lam_np1,
         nu >= (2.0 * a + 0.75 * b * b) / lam_np1});
    rep.rate_kind = "exponential";
    rep.rate = 0.5 * b;
    rep.rate_series = "wave_energy";  // ||zt||^2 + ||grad z||^2 <= E0 e^{-bt/2}
    rep.certified = rep.conditions[0].satisfied && rep.conditions[1].satisfied;
    return rep;
}

ThresholdReport ndwave_thresholds(double m0, double mu, int n, const Basis& basis) {
    if (m0 <= 0.0) throw std::domain_error("ndwave_thresholds: m0 must be > 0");
    ThresholdReport rep;
    rep.model = ModelKind::NDWave;
    rep.mu = mu;
    rep.n = n;
    rep.mu_min = m0;
    rep.n_min = least_n_with_gap(basis, 2.0 * mu * m0, /*strict=*/false, /*floor_n=*/0);
    const double lam_np1 = basis.eigenvalue(n + 1);
    rep.constants = {{"lambda1", basis.lambda1()},
                     {"m0", m0},
                     {"lambda_Np1", lam_np1},
                     {"gap_threshold", 2.0 * mu * m0}};
    rep.conditions.push_back({"mu >= m0", mu, m0, mu >= m0});
    rep.conditions.push_back(
        {"lambda_{N+1} >= 2 mu m0", lam_np1, 2.0 * mu * m0, lam_np1 >= 2.0 * mu * m0});
    rep.rate_kind = "algebraic";
    rep.rate = 0.5;  // E(t) <= C t^{-1/2}
    rep.rate_series = "lyapunov";
    rep.certified = rep.conditions[0].satisfied && rep.conditions[1].satisfied;
    return rep;
}

std::string ThresholdReport::to_json() const {
    nlohmann::json j;
    j["model"] = model_name(model);
    j["constants"] = constants;
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : conditions)
        conds.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied}});
    j["conditions"] = conds;
    j["mu"] = mu;
    j["n"] = n;
    j["mu_min"] = std::isfinite(mu_min) ? nlohmann::json(mu_min) : nlohmann::json();
    j["n_min"] = n_min;
    j["guaranteed_rate"] = {{"kind", rate_kind}, {"value", rate}, {"series", rate_series}};
    j["certified"] = certified;
    if (fixed_point.used) {
        j["fixed_point"] = {{"converged", fixed_point.converged},
                            {"iterations", fixed_point.iterations},
                            {"trace", fixed_point.trace}};
    }
    return j.dump(2);
}

}  // namespace fmstab
