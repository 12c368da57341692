#pragma once

#include <vector>

#include "fmstab/thresholds.hpp"

namespace fmstab {

struct DecayFit {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double fitted_rate = 0.0;  ///< per unit time, -slope of the log-linear fit
    double r_squared = 0.0;
    bool floor_reached = false;
    int n_used = 0;
};

/// Least-squares line on (t, log value) over [t_lo, t_hi]; samples at or
/// below the numerical floor are excluded.
DecayFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                         double t_lo, double t_hi, double floor = 1e-13);

struct AlgebraicCheck {
    double sup = 0.0;      ///< sup of value * t^exponent over t >= t_lo
    double t_at_sup = 0.0;
    bool bounded = false;  ///< no growth trend in the last decade of the horizon
};

AlgebraicCheck check_algebraic_decay(const std::vector<double>& t,
                                     const std::vector<double>& value, double exponent,
                                     double t_lo = 1.0);

enum class Verdict { PASS, FAIL, NOT_APPLICABLE };

/// The theorems guarantee at least the certified rate; PASS iff
/// fitted_rate >= 0.95 * guaranteed rate on a certified report.
Verdict compare_to_certificate(const DecayFit& fit, const ThresholdReport& report);

const char* verdict_name(Verdict v);

struct MonotoneCheck {
    bool ok = true;
    int worst_index = -1;
    double worst_rel_increase = 0.0;
};

/// Nonincreasing up to a relative per-step tolerance (Lyapunov functionals).
MonotoneCheck check_nonincreasing(const std::vector<double>& value, double rel_tol);

}  // namespace fmstab
