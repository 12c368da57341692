#pragma once

#include "fmstab/field.hpp"

namespace fmstab {

/// Constants of the functional inequalities used by the threshold
/// calculators. The defaults are safe over-estimates; the thresholds are
/// monotone in them, so sufficiency is preserved.
struct IneqConstants {
    double c0 = 2.0;      ///< 1D Agmon
    double b0 = 2.0;      ///< 3D Ladyzhenskaya
    double beta = 2.0;    ///< 1D Gagliardo-Nirenberg
    double lambda1 = 0.0; ///< first eigenvalue; 0 = take it from the field's basis

    void validate() const;
};

enum class Ineq { PF, PFN, Agmon, Lad3, GN };

struct IneqCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Evaluates both sides of the inequality on the discrete field.
/// PFN requires the mode count in `n`. GN is the (j=0, p=4, m=1) instance
/// ||u||_L4 <= beta ||u||^{3/4} ||u'||^{1/4}.
IneqCheck check_inequality(Ineq which, const SpectralField& u, const IneqConstants& consts,
                           int n = 0);

}  // namespace fmstab
