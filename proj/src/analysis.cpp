#include "fmstab/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace fmstab {

DecayFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                         double t_lo, double t_hi, double floor) {
    if (t.size() != value.size()) throw std::invalid_argument("fit_exponential: length mismatch");
    if (!(t_lo < t_hi)) throw std::invalid_argument("fit_exponential: bad window");
    DecayFit fit;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    int n = 0;
    int in_window = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        ++in_window;
        if (!(value[i] > floor)) continue;
        const double x = t[i];
        const double y = std::log(value[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    fit.n_used = n;
    if (n == 0) {
        fit.floor_reached = in_window > 0;
        return fit;
    }
    const double det = n * sxx - sx * sx;
    if (det <= 0.0) {
        fit.fitted_rate = 0.0;
        fit.r_squared = 1.0;
        return fit;
    }
    const double slope = (n * sxy - sx * sy) / det;
    const double icept = (sy - slope * sx) / n;
    fit.fitted_rate = -slope;
    const double ss_tot = syy - sy * sy / n;
    // residual sum from the closed form
    double ss_res = ss_tot - slope * (sxy - sx * sy / n);
    if (ss_res < 0.0) ss_res = 0.0;
    fit.r_squared = ss_tot <= 1e-300 ? 1.0 : 1.0 - ss_res / ss_tot;
    (void)icept;
    return fit;
}

AlgebraicCheck check_algebraic_decay(const std::vector<double>& t,
                                     const std::vector<double>& value, double exponent,
                                     double t_lo) {
    if (t.size() != value.size()) throw std::invalid_argument("check_algebraic_decay: length mismatch");
    AlgebraicCheck r;
    double t_hi = 0.0;
    for (double x : t) t_hi = std::max(t_hi, x);
    double dec_start = t_hi / 10.0;
    if (dec_start <= t_lo) dec_start = 0.5 * (t_lo + t_hi);
    double sup = -1.0, t_sup = 0.0;
    double early_max = -1.0, late_max = -1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo) continue;
        const double s = value[i] * std::pow(t[i], exponent);
        if (s > sup) {
            sup = s;
            t_sup = t[i];
        }
        if (t[i] <= dec_start)
            early_max = std::max(early_max, s);
        else
            late_max = std::max(late_max, s);
    }
    if (sup < 0.0) throw std::domain_error("check_algebraic_decay: no samples beyond t_lo");
    r.sup = sup;
    r.t_at_sup = t_sup;
    if (late_max < 0.0)
        r.bounded = true;  // nothing in the last decade
    else if (t_sup <= dec_start)
        r.bounded = true;
    else
        r.bounded = early_max > 0.0 && late_max <= 1.1 * early_max;
    return r;
}

Verdict compare_to_certificate(const DecayFit& fit, const ThresholdReport& report) {
    if (!report.certified || report.rate_kind != "exponential") return Verdict::NOT_APPLICABLE;
    return fit.fitted_rate >= report.rate * (1.0 - 0.05) ? Verdict::PASS : Verdict::FAIL;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::NOT_APPLICABLE: return "NOT_APPLICABLE";
    }
    return "?";
}

MonotoneCheck check_nonincreasing(const std::vector<double>& value, double rel_tol) {
    MonotoneCheck r;
    for (std::size_t i = 1; i < value.size(); ++i) {
        const double scale = std::max(std::abs(value[i - 1]), 1e-300);
        const double rel = (value[i] - value[i - 1]) / scale;
        if (rel > r.worst_rel_increase) {
            r.worst_rel_increase = rel;
            r.worst_index = static_cast<int>(i);
        }
    }
    r.ok = r.worst_rel_increase <= rel_tol;
    return r;
}

}  // namespace fmstab
