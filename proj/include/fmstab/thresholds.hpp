#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmstab/models.hpp"

namespace fmstab {

struct Condition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct FixedPointInfo {
    bool used = false;
    bool converged = true;
    int iterations = 0;
    std::vector<double> trace;  ///< mu iterates, full history on divergence
};

/// Certificate: every derived constant of a model's sufficient conditions,
/// the conditions themselves evaluated at a concrete (mu, N), the minimal
/// admissible (mu_min, N_min), and the guaranteed decay.
struct ThresholdReport {
    ModelKind model = ModelKind::BBMB;
    std::map<std::string, double> constants;
    std::vector<Condition> conditions;
    double mu = 0.0;   ///< gain the conditions were evaluated at
    int n = 0;         ///< mode count the conditions were evaluated at
    double mu_min = 0.0;
    int n_min = 0;
    std::string rate_kind;    ///< "exponential" or "algebraic"
    double rate = 0.0;        ///< decay rate, or the algebraic exponent
    std::string rate_series;  ///< which norm the guarantee bounds
    bool certified = false;
    FixedPointInfo fixed_point;

    std::string to_json() const;  ///< pretty-printed certificate document
};

/// Theorem 2.1 (NSV). Conditions mu >= C1(nu) r0^2 b0^4 and
/// nu - 4 lambda_{N+1}^{-1} C1 r0^2 b0^4 > 0; guaranteed rate kappa on ||grad z||.
ThresholdReport nsv_thresholds(double nu, double alpha, double h_norm, double b0,
                               const Basis& basis, std::optional<double> mu = {},
                               std::optional<int> n = {});

/// BBMB theorem. The R2 <-> mu circularity is resolved by fixed-point
/// iteration from mu = 0; sobolev_const scales the |s|-radii of the D1/D2
/// maximizations (the paper's ||z||_inf <= ||dx z|| has constant 1).
ThresholdReport bbmb_thresholds(const NonlinearitySpec& f, double h_norm, const Basis& basis,
                                double sobolev_const = 1.0, std::optional<double> mu = {},
                                std::optional<int> n = {}, double fp_start = 0.0);

/// KdVB theorem. The mu <-> M1/M2/M3 coupling uses the same fixed-point
/// scheme; divergence (possible: M3 grows like mu^2) yields a non-certifiable
/// report carrying the full iterate trace.
ThresholdReport kdvb_thresholds(double h_norm, const Basis& basis, double beta,
                                std::optional<double> mu = {}, std::optional<int> n = {},
                                double fp_start = 0.0);

/// Strongly damped wave theorem: mu_min = a + 3b^2/4,
/// lambda_{N+1} >= (2a + 3b^2/4)/nu, E0 evaluated on the initial error data.
ThresholdReport sdwave_thresholds(double b, double nu, double a, double m0, int p,
                                  const Basis& basis, const SpectralField& z0,
                                  const SpectralField& z1, std::optional<double> mu = {},
                                  std::optional<int> n = {}, double d0 = 0.25);

/// Nonlinearly damped wave: mu >= m0 and lambda_{N+1} >= 2 mu m0;
/// algebraic guarantee E(t) <= C t^{-1/2}.
ThresholdReport ndwave_thresholds(double m0, double mu, int n, const Basis& basis);

/// Least admissible N for a spectral-gap condition on lambda_{N+1}.
int least_n_with_gap(const Basis& basis, double threshold, bool strict, int floor_n);

}  // namespace fmstab
