#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmstab/field.hpp"

namespace fmstab {

enum class ModelKind { NSV2D, BBMB, KdVB, SDWave, NDWave };

/// Nonlinearity f. For BBMB/KdVB it multiplies dx u (form Zero disables the
/// advective term, Identity gives the paper's u dx u); for the wave kinds it
/// is the semilinear source f(u). p, m0, a, d0 are the growth/coercivity
/// constants of the wave-equation condition -m0 + a|s|^p <= f'(s) <= m0(1+|s|^p).
struct NonlinearitySpec {
    enum class Form { Zero, Polynomial, CubicMinusLinear, Identity };
    Form form = Form::Zero;
    std::vector<double> poly;  // low-order first, Polynomial form only
    int p = 2;
    double m0 = 1.0;
    double a = 1.0;
    double d0 = 0.25;

    double eval(double s) const;
    double deriv(double s) const;
    std::vector<double> coefficients() const;  // polynomial view of f
    bool is_zero() const { return form == Form::Zero; }

    /// Checks -m0 + a|s|^p <= f'(s) <= m0(1 + |s|^p) on a dense grid of
    /// |s| <= range. Throws std::domain_error when violated.
    void check_growth_condition(double range) const;
};

/// Damping g for the nonlinearly damped wave equation:
/// g(s) = a1 s (+ a2 |s|^m s). gc2 holds with certified constants
/// (a1, a2 2^{-m}); gc1 with a0 = max(a1, a2 (m+1)).
struct DampingSpec {
    enum class Form { Linear, LinearPlusPower };
    Form form = Form::Linear;
    double a1 = 1.0;
    double a2 = 0.0;
    double m = 0.0;

    double eval(double s) const;
    double gc1_a0() const;
    double gc2_a1() const { return a1; }
    double gc2_a2() const;
    void check_monotonicity(double range) const;
};

struct ModelSpec {
    ModelKind kind = ModelKind::BBMB;
    double nu = 1.0;      ///< coefficient of -Laplace (diffusion)
    double alpha = 1.0;   ///< Voigt / BBMB regularization: -alpha^2 Laplace d/dt
    double b = 1.0;       ///< strong damping -b Laplace d/dt (SDWave)
    double lambda = 0.0;  ///< linear term -lambda u (SDWave)
    double sdwave_eps = 0.0;  ///< epsilon of E_eps; 0 = default b/2
    NonlinearitySpec f;
    DampingSpec g;
    SpectralField h;      ///< time-independent forcing (coefficients)
    Basis basis;

    bool second_order() const { return kind == ModelKind::SDWave || kind == ModelKind::NDWave; }
    void validate() const;
};

/// State of one PDE system: u, plus du/dt for second-order kinds.
struct ModelState {
    SpectralField u;
    std::optional<SpectralField> ut;
};

/// Full evolution right-hand side (no controller) plus the diagonal
/// time-derivative mass operator. For NSV/BBMB mass_k = 1 + alpha^2 lambda_k;
/// second-order kinds integrate the first-order system in (u, du/dt) with
/// unit mass.
struct RhsEval {
    SpectralField rhs_u;
    std::optional<SpectralField> rhs_ut;
    std::vector<double> mass;  ///< per mode, applied to du/dt
};

RhsEval rhs(const ModelSpec& model, const ModelState& state);

/// Options for the energy functionals that depend on the controller.
struct EnergyOpts {
    double mu = 0.0;
    int n = 0;
    double eps = 0.0;                        ///< SDWave: 0 = b/2
    const SpectralField* phi = nullptr;      ///< NDWave stationary target
};

/// Model energy with named components.
/// NSV/BBMB: ||u||^2 + alpha^2 ||grad u||^2. KdVB: ||u||^2.
/// SDWave: the perturbed functional E_eps of the state (z, dz/dt).
/// NDWave: E(t) = 1/2||zt||^2 + 1/2||grad z||^2 + mu/2 sum_{k<=N}(z,w_k)^2 + F(z).
struct EnergyReport {
    double total = 0.0;
    std::map<std::string, double> components;
};

EnergyReport energy(const ModelSpec& model, const ModelState& state, const EnergyOpts& opts = {});

/// F(z) = int_0^1 (f(phi + s z) - f(phi), z) ds by 16-point Gauss-Legendre
/// (exact for polynomial f up to degree 31).
double nonlinearity_potential(const NonlinearitySpec& f, const SpectralField& phi,
                              const SpectralField& z);

/// Galerkin projection of f(u) (polynomial path, exact).
SpectralField project_f(const NonlinearitySpec& f, const SpectralField& u);

/// Galerkin projection of g(w); exact for even integer m, quadrature otherwise.
SpectralField project_g(const DampingSpec& g, const SpectralField& w);

/// int |u|^p dx by composite quadrature.
double integral_abs_pow(const SpectralField& u, double p);

}  // namespace fmstab
