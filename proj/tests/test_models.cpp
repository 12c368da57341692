#include <doctest.h>

#include <cmath>

#include "fmstab/models.hpp"
#include "oracle_quadrature.hpp"

using namespace fmstab;

namespace {

ModelSpec bbmb_linear(int modes = 8) {
    ModelSpec m;
    m.kind = ModelKind::BBMB;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, modes);
    m.f.form = NonlinearitySpec::Form::Zero;
    return m;
}

}  // namespace

TEST_CASE("BBMB linear rhs is diagonal with mass 1 + lambda") {
    ModelSpec m = bbmb_linear();
    const double lam1 = m.basis.eigenvalue(1);
    ModelState s{single_mode(m.basis, 1, 1.0), std::nullopt};
    const RhsEval r = rhs(m, s);
    CHECK(r.mass[0] == doctest::Approx(1.0 + lam1).epsilon(1e-15));
    CHECK(r.rhs_u.coeffs[0] == doctest::Approx(-lam1).epsilon(1e-15));
    for (int k = 2; k <= m.basis.size(); ++k) CHECK(r.rhs_u.coeffs[k - 1] == 0.0);
}

TEST_CASE("KdVB linear rhs: diffusive decay plus dispersive rotation") {
    ModelSpec m;
    m.kind = ModelKind::KdVB;
    m.basis = Basis(BasisKind::PeriodicZeroMean1D, 1.0, 6);
    m.f.form = NonlinearitySpec::Form::Zero;
    const double kap = 2.0 * M_PI;
    ModelState s{single_mode(m.basis, 1, 1.0), std::nullopt};  // cos(2 pi x) mode
    const RhsEval r = rhs(m, s);
    CHECK(r.rhs_u.coeffs[0] == doctest::Approx(-kap * kap).epsilon(1e-14));
    CHECK(r.rhs_u.coeffs[1] == doctest::Approx(-kap * kap * kap).epsilon(1e-14));
    CHECK(r.mass[0] == 1.0);
}

TEST_CASE("NSV: a single shear mode has no nonlinear contribution") {
    ModelSpec m;
    m.kind = ModelKind::NSV2D;
    m.nu = 0.7;
    m.alpha = 1.3;
    m.basis = Basis(BasisKind::PeriodicZeroMean2DVector, 1.0, 3);
    ModelState s{single_mode(m.basis, 1, 2.0), std::nullopt};
    const double lam = m.basis.eigenvalue(1);
    const RhsEval r = rhs(m, s);
    CHECK(r.rhs_u.coeffs[0] == doctest::Approx(-m.nu * lam * 2.0).epsilon(1e-11));
    CHECK(r.mass[0] == doctest::Approx(1.0 + m.alpha * m.alpha * lam).epsilon(1e-15));
    for (int k = 2; k <= m.basis.size(); ++k) CHECK(std::abs(r.rhs_u.coeffs[k - 1]) < 1e-12);
}

TEST_CASE("BBMB advective term matches the quadrature oracle through rhs") {
    ModelSpec m = bbmb_linear(10);
    m.f.form = NonlinearitySpec::Form::Identity;
    SpectralField u = project_low_modes(random_smooth(m.basis, 5, 1.0, 0.8), 5);
    const RhsEval r = rhs(m, {u, std::nullopt});
    for (int k = 1; k <= m.basis.size(); ++k) {
        const double lin = -m.basis.eigenvalue(k) * u.coeffs[k - 1];
        const double adv = oracle::integrate(
            [&](double x) {
                return oracle::field_value(u, x) * oracle::field_deriv(u, x) *
                       oracle::mode_1d(m.basis, k, x);
            },
            1.0);
        CHECK(r.rhs_u.coeffs[k - 1] == doctest::Approx(lin - adv).epsilon(5e-7).scale(1.0));
    }
}

TEST_CASE("missing du/dt for wave kinds is a domain error") {
    ModelSpec m;
    m.kind = ModelKind::SDWave;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, 8);
    m.f.form = NonlinearitySpec::Form::Zero;
    ModelState s{single_mode(m.basis, 1, 1.0), std::nullopt};
    CHECK_THROWS_AS(rhs(m, s), std::domain_error);
}

TEST_CASE("model validation rejects bad parameters and bases") {
    ModelSpec m;
    m.kind = ModelKind::KdVB;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, 8);
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m.kind = ModelKind::NSV2D;
    m.basis = Basis(BasisKind::PeriodicZeroMean2DVector, 1.0, 3);
    m.alpha = 0.0;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m.alpha = 1.0;
    CHECK_NOTHROW(m.validate());
    // forcing on a mismatched basis
    m.h = SpectralField(Basis(BasisKind::PeriodicZeroMean2DVector, 1.0, 4));
    CHECK_THROWS_AS(m.validate(), std::domain_error);
}

TEST_CASE("NSV energy of a unit first mode with alpha=1 is 1 + lambda1") {
    ModelSpec m;
    m.kind = ModelKind::NSV2D;
    m.basis = Basis(BasisKind::PeriodicZeroMean2DVector, 1.0, 3);
    const EnergyReport e = energy(m, {single_mode(m.basis, 1, 1.0), std::nullopt});
    CHECK(e.total == doctest::Approx(1.0 + m.basis.eigenvalue(1)).epsilon(1e-14));
}

TEST_CASE("NDWave energy of the zero state is zero, and F(0) = 0") {
    ModelSpec m;
    m.kind = ModelKind::NDWave;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, 8);
    m.f.form = NonlinearitySpec::Form::CubicMinusLinear;
    SpectralField z(m.basis), zt(m.basis);
    SpectralField phi = random_smooth(m.basis, 8, 2.0, 0.5);
    EnergyOpts opts;
    opts.mu = 3.0;
    opts.n = 2;
    opts.phi = &phi;
    const EnergyReport e = energy(m, {z, zt}, opts);
    CHECK(e.total == 0.0);
    CHECK(nonlinearity_potential(m.f, phi, z) == 0.0);
}

TEST_CASE("SDWave E_eps matches the hand-evaluated quadratic form on two modes") {
    ModelSpec m;
    m.kind = ModelKind::SDWave;
    m.b = 2.0;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, 4);
    m.f.form = NonlinearitySpec::Form::Zero;
    const double lam1 = m.basis.eigenvalue(1), lam2 = m.basis.eigenvalue(2);
    const double c1 = 0.3, c2 = -0.2, d1 = 0.5, d2 = 0.1;
    SpectralField z(m.basis), zt(m.basis);
    z.coeffs[0] = c1;
    z.coeffs[1] = c2;
    zt.coeffs[0] = d1;
    zt.coeffs[1] = d2;
    EnergyOpts opts;
    opts.mu = 4.0;
    opts.n = 1;
    const double eps = 0.5 * m.b;
    const double expect = (d1 * d1 / lam1 + d2 * d2 / lam2) + (c1 * c1 + c2 * c2) +
                          opts.mu * (1.0 / lam1 + 0.5 * eps) * c1 * c1 +
                          0.5 * eps * m.b * (lam1 * c1 * c1 + lam2 * c2 * c2) +
                          eps * (c1 * d1 + c2 * d2);
    const EnergyReport e = energy(m, {z, zt}, opts);
    CHECK(e.total == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("nonlinearity potential: cubic f at phi = 0 gives ||z||_4^4 / 4") {
    ModelSpec m;
    m.kind = ModelKind::NDWave;
    m.basis = Basis(BasisKind::SineDirichlet1D, 1.0, 8);
    NonlinearitySpec f;
    f.form = NonlinearitySpec::Form::Polynomial;
    f.poly = {0.0, 0.0, 0.0, 1.0};
    SpectralField z = random_smooth(m.basis, 12, 2.0, 0.6);
    const double expect = 0.25 * integral_abs_pow(z, 4.0);
    CHECK(nonlinearity_potential(f, SpectralField(m.basis), z) ==
          doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("growth condition sampler accepts s^3 with (m0, a, p) = (3, 3, 2)") {
    NonlinearitySpec f;
    f.form = NonlinearitySpec::Form::Polynomial;
    f.poly = {0.0, 0.0, 0.0, 1.0};
    f.p = 2;
    f.m0 = 3.0;
    f.a = 3.0;
    CHECK_NOTHROW(f.check_growth_condition(10.0));
    f.m0 = 0.5;  // upper bound 0.5 (1 + s^2) fails against f' = 3 s^2
    CHECK_THROWS_AS(f.check_growth_condition(10.0), std::domain_error);
}

TEST_CASE("damping monotonicity holds with the certified gc2 constants") {
    DampingSpec g;
    g.form = DampingSpec::Form::LinearPlusPower;
    g.a1 = 0.5;
    g.a2 = 0.5;
    g.m = 2.0;
    CHECK_NOTHROW(g.check_monotonicity(5.0));
    CHECK(g.eval(0.0) == 0.0);
    CHECK(g.gc2_a2() == doctest::Approx(0.125));
    CHECK(g.gc1_a0() == doctest::Approx(1.5));
}

TEST_CASE("project_g handles linear and power damping") {
    Basis b(BasisKind::SineDirichlet1D, 1.0, 8);
    SpectralField w = random_smooth(b, 21, 2.0, 0.5);
    DampingSpec lin;
    lin.a1 = 2.0;
    const SpectralField gl = project_g(lin, w);
    for (int k = 0; k < w.size(); ++k)
        CHECK(gl.coeffs[k] == doctest::Approx(2.0 * w.coeffs[k]).epsilon(1e-15));
    DampingSpec pw;
    pw.form = DampingSpec::Form::LinearPlusPower;
    pw.a1 = 0.5;
    pw.a2 = 0.5;
    pw.m = 2.0;
    const SpectralField gp = project_g(pw, w);
    for (int k = 1; k <= b.size(); ++k) {
        const double expect = oracle::integrate(
            [&](double x) {
                const double s = oracle::field_value(w, x);
                return (0.5 * s + 0.5 * s * s * s) * oracle::mode_1d(b, k, x);
            },
            1.0);
        CHECK(gp.coeffs[k - 1] == doctest::Approx(expect).epsilon(1e-11).scale(1.0));
    }
}
