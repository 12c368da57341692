#include <doctest.h>

#include <cmath>

#include "fmstab/inequalities.hpp"

using namespace fmstab;

TEST_CASE("Poincare-Friedrichs is saturated by the first eigenfunction") {
    Basis b(BasisKind::SineDirichlet1D, 1.0, 8);
    const SpectralField w1 = single_mode(b, 1, 1.0);
    const IneqCheck c = check_inequality(Ineq::PF, w1, IneqConstants{});
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
    CHECK(c.holds);
}

TEST_CASE("PFN is saturated by a pure tail mode") {
    Basis b(BasisKind::SineDirichlet1D, 1.0, 8);
    const int n = 3;
    const SpectralField w = single_mode(b, n + 1, 2.0);
    const IneqCheck c = check_inequality(Ineq::PFN, w, IneqConstants{}, n);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-12));
    CHECK(c.holds);
}

TEST_CASE("Agmon on sin(pi x) with c0 = 2: 1 <= pi") {
    Basis b(BasisKind::SineDirichlet1D, 1.0, 8);
    // u = sin(pi x): coefficient 1/sqrt(2) on w_1
    const SpectralField u = single_mode(b, 1, 1.0 / std::sqrt(2.0));
    const IneqCheck c = check_inequality(Ineq::Agmon, u, IneqConstants{});
    CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(c.rhs == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(c.holds);
}

TEST_CASE("Ladyzhenskaya and Gagliardo-Nirenberg hold on random fields") {
    SUBCASE("1d") {
        Basis b(BasisKind::PeriodicZeroMean1D, 1.0, 8);
        for (std::uint64_t s : {1ull, 2ull, 3ull}) {
            const SpectralField u = random_smooth(b, s, 1.0, 1.0);
            CHECK(check_inequality(Ineq::Lad3, u, IneqConstants{}).holds);
            CHECK(check_inequality(Ineq::GN, u, IneqConstants{}).holds);
        }
    }
    SUBCASE("2d") {
        Basis b(BasisKind::PeriodicZeroMean2DVector, 1.0, 3);
        const SpectralField u = random_smooth(b, 4, 1.0, 1.0);
        CHECK(check_inequality(Ineq::Lad3, u, IneqConstants{}).holds);
    }
}

TEST_CASE("constants must be positive") {
    IneqConstants c;
    c.c0 = 0.0;
    Basis b(BasisKind::SineDirichlet1D, 1.0, 4);
    CHECK_THROWS_AS(check_inequality(Ineq::PF, single_mode(b, 1, 1.0), c), std::invalid_argument);
}
