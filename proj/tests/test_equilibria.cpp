#include "doctest.h"

#include <cmath>

#include "qdot/equilibria.hpp"
#include "qdot/errors.hpp"
#include "qdot/units.hpp"

using namespace qdot;

TEST_CASE("deficit") {
    CHECK(deficit(0.0, 1.0) == 0.0);
    CHECK(deficit(6.0, 2.75) == doctest::Approx(std::sqrt(29.4375)).epsilon(1e-15));
    CHECK_THROWS_AS(deficit(0.0, 2.0), out_of_family_error);
}

TEST_CASE("gm_value") {
    CHECK(gm_value(0.0, 3.0, 2.0, 1.0) == doctest::Approx(4.0 - 9.0).epsilon(1e-15));
    // at p = p_max the boundary function is identically 1
    for (double M : {0.5, 1.0, 2.0, 6.0})
        CHECK(gm_value(p_max(6.0, 2.75, M), 6.0, 2.75, M) ==
              doctest::Approx(1.0).epsilon(1e-12));
    const double expect = std::pow(2.75, 8.0 / 3.0) - 36.0 + 7.5625;
    CHECK(gm_value(1.0, 6.0, 2.75, 1.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(gm_value(1.0, 6.0, 2.75, 1.0) == doctest::Approx(-13.5934).epsilon(1e-4));
}

TEST_CASE("u_crit") {
    CHECK(u_crit(2.0, 0.0, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(u_crit(1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u_crit(2.75, 1.0, 1.0) ==
          doctest::Approx(std::sqrt(std::pow(2.75, 8.0 / 3.0) - 1.0 + 7.5625))
              .epsilon(1e-14));
    CHECK_THROWS_AS(u_crit(0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("p_max") {
    CHECK(p_max(3.0, 1.0, 2.0) == doctest::Approx(3.0).epsilon(1e-14)); // d(u,1)=u, h(1)=1
    CHECK(p_max(6.0, 2.75, 1.0) ==
          doctest::Approx(std::sqrt(29.4375) * std::pow(2.75, -4.0 / 3.0)).epsilon(1e-14));
    CHECK(p_max(6.0, 3.0, 1.0) ==
          doctest::Approx(std::sqrt(28.0) * std::pow(3.0, -4.0 / 3.0)).epsilon(1e-14));
    CHECK(p_max(6.0, 3.0, 1.0) == doctest::Approx(1.22297433376974).epsilon(1e-12));
}

TEST_CASE("asymmetric state") {
    // p = 0, v < 1: on-axis pair with E = (3/2) v^(2/3) at M = 1
    const AsymmetricState low = asymmetric_state(2.0, 0.5, 0.0, 1.0);
    CHECK(low.rho == 0.0);
    CHECK(low.z == doctest::Approx(std::pow(0.5, -2.0 / 3.0)).epsilon(1e-14));
    CHECK(low.energy == doctest::Approx(1.5 * std::pow(0.5, 2.0 / 3.0)).epsilon(1e-14));

    const AsymmetricState st = asymmetric_state(6.0, 2.75, 1.0, 1.0);
    CHECK(st.energy == doctest::Approx(2.36991775750506).epsilon(1e-12));
    CHECK(st.r == doctest::Approx(std::pow(2.75, -2.0 / 3.0)).epsilon(1e-14));
    CHECK(st.rho * st.rho + st.z * st.z == doctest::Approx(st.r * st.r).epsilon(1e-13));

    // toward the boundary z -> 0 and rho -> r
    const double pm = p_max(6.0, 2.75, 1.0);
    const AsymmetricState edge = asymmetric_state(6.0, 2.75, pm * (1.0 - 1e-12), 1.0);
    CHECK(edge.z == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(edge.rho == doctest::Approx(edge.r).epsilon(1e-10));

    CHECK_THROWS_AS(asymmetric_state(6.0, 2.75, pm, 1.0), out_of_family_error);
    CHECK_THROWS_AS(asymmetric_state(0.0, 2.0, 0.1, 1.0), out_of_family_error);
    try {
        asymmetric_state(6.0, 2.75, pm + 1.0, 1.0);
    } catch (const out_of_family_error& e) {
        CHECK(e.reason == out_of_family_error::Reason::momentum_at_boundary);
    }
    try {
        asymmetric_state(0.0, 2.0, 0.1, 1.0);
    } catch (const out_of_family_error& e) {
        CHECK(e.reason == out_of_family_error::Reason::no_deficit);
    }
}

TEST_CASE("rho^4 / r^4 ratio identity") {
    for (double p : {0.1, 0.5, 1.0}) {
        const AsymmetricState st = asymmetric_state(6.0, 2.75, p, 1.0);
        const double lhs = std::pow(st.rho / st.r, 4.0);
        const double rhs = (gm_value(p, 6.0, 2.75, 1.0) + 36.0 - 7.5625) / 29.4375;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("vstar bisection") {
    // boundary identity: p = p_max(u, v, M) maps back to v
    for (double M : {0.5, 1.0, 3.0}) {
        const double vs = vstar(p_max(6.0, 2.75, M), 6.0, M);
        CHECK(vs == doctest::Approx(2.75).epsilon(1e-12));
    }
    // minimal band: p = u gives v* = 1
    CHECK(vstar(6.0, 6.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vstar(0.3, 0.3, 6.0) == doctest::Approx(1.0).epsilon(1e-12));
    // p = 0 pins v* at sqrt(1+u^2)
    CHECK(vstar(0.0, 6.0, 1.0) == doctest::Approx(std::sqrt(37.0)).epsilon(1e-15));

    CHECK(vstar(1.0, 6.0, 1.0) == doctest::Approx(3.37427650405357).epsilon(1e-12));
}

TEST_CASE("vstar closed form matches bisection for M = 1") {
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double p = 5.0 * i / 20.0;
            const double u = 10.0 * j / 20.0;
            CHECK(vstar(p, u, 1.0, VstarMethod::ClosedM1) ==
                  doctest::Approx(vstar(p, u, 1.0)).epsilon(1e-11));
        }
    CHECK_THROWS_AS(vstar(1.0, 1.0, 2.0, VstarMethod::ClosedM1), std::invalid_argument);
}

TEST_CASE("vstar monotonicity") {
    double prev = vstar(0.0, 6.0, 1.0);
    for (double p : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double vs = vstar(p, 6.0, 1.0);
        CHECK(vs < prev);
        prev = vs;
    }
    prev = vstar(1.0, 0.0, 1.0);
    for (double u : {1.0, 2.0, 5.0, 9.0}) {
        const double vs = vstar(1.0, u, 1.0);
        CHECK(vs > prev);
        prev = vs;
    }
}

TEST_CASE("symmetric state") {
    // minimal band point
    const SymmetricState band = symmetric_state(2.0, 2.0, 1.0);
    CHECK(band.v_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(band.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(band.energy == doctest::Approx(1.5).epsilon(1e-12));

    const SymmetricState st = symmetric_state(p_max(6.0, 3.0, 1.0), 6.0, 1.0);
    CHECK(st.v_star == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(st.rho == doctest::Approx(std::pow(3.0, -2.0 / 3.0)).epsilon(1e-12));
    CHECK(st.energy == doctest::Approx(2.25365162589869).epsilon(1e-12));

    // p = 0: the d(d - eps u) term vanishes identically
    const SymmetricState rest = symmetric_state(0.0, 4.0, 2.0);
    CHECK(rest.v_star == doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));
    CHECK(rest.energy ==
          doctest::Approx(0.5 * 2.0 * std::pow(17.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("boundary continuity between the families") {
    for (double M : {0.5, 1.0, 2.0, 3.0}) {
        const double u = 6.0, v = 2.75;
        const double pm = p_max(u, v, M);
        const AsymmetricState a = asymmetric_state(u, v, pm * (1.0 - 1e-13), M);
        const SymmetricState s = symmetric_state(pm, u, M);
        CHECK(a.rho == doctest::Approx(s.rho).epsilon(1e-8));
        CHECK(a.energy == doctest::Approx(s.energy).epsilon(1e-8));
        CHECK(a.z < 1e-5);
    }
}

TEST_CASE("cm equilibrium energy") {
    CHECK(cm_equilibrium_energy(0.0, 3.0) == 0.0);
    CHECK(cm_equilibrium_energy(2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cm_equilibrium_energy(-1.0, std::sqrt(3.0)) ==
          doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("minimal states") {
    const MinimalState s = minimal_state(2.0, 4.0, 1.0);
    CHECK(s.p_phi == 2.0);
    CHECK(s.rho_sq == 1.0);
    CHECK(s.energy == 1.5);
    CHECK(s.family == Family::S);

    const MinimalState a = minimal_state(5.0, 0.5, 1.0);
    CHECK(a.p_phi == 0.0);
    CHECK(a.energy == doctest::Approx(1.5 * std::pow(0.5, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(a.family == Family::A);

    // both branches agree at v = 1 (exactly: h(1) = 1)
    for (double M : {0.5, 1.0, 3.0})
        CHECK(minimal_state(2.0, 1.0, M).energy ==
              doctest::Approx(minimal_state(2.0, 1.0 + 1e-300, M).energy).epsilon(1e-15));
}

TEST_CASE("minimal-state diamagnetism: energy is flat in u") {
    for (double v : {0.5, 4.0}) {
        const double h = 1e-4;
        const double d =
            (minimal_state(3.0 + h, v, 1.0).energy - minimal_state(3.0 - h, v, 1.0).energy) /
            (2.0 * h);
        CHECK(std::fabs(d) <= 1e-8);
    }
}

TEST_CASE("b_bullet") {
    const MaterialSpec gaas{0.067, 12.0, 0.3};
    const double b1 = b_bullet(gaas, TrapSpec{1.0, 4.0, 1.0, std::nullopt});
    CHECK(b1 == doctest::Approx(0.626).epsilon(2e-3));
    const double b2 = b_bullet(gaas, TrapSpec{2.0, 8.0, 1.0, std::nullopt});
    CHECK(b2 == doctest::Approx(1.57669116283737).epsilon(1e-12));
    // doubling hw multiplies the increment by 2^(4/3)
    CHECK(b2 / b1 == doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("reduced potential at the equilibria") {
    const AsymmetricState st = asymmetric_state(6.0, 2.75, 1.0, 1.0);
    CHECK(reduced_potential(st.rho, st.z, 1.0, 6.0, 2.75, 1.0) ==
          doctest::Approx(st.energy).epsilon(1e-12));

    const SymmetricState ss = symmetric_state(2.0, 6.0, 1.0);
    CHECK(reduced_potential(ss.rho, 0.0, 2.0, 6.0, 2.75, 1.0) ==
          doctest::Approx(ss.energy).epsilon(1e-12));

    CHECK_THROWS_AS(reduced_potential(0.0, 0.0, 0.0, 1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reduced_potential(0.0, 1.0, 0.5, 1.0, 1.0, 1.0), std::domain_error);
    // p = 0 drops the centrifugal term: finite on the axis
    CHECK(std::isfinite(reduced_potential(0.0, 1.0, 0.0, 1.0, 1.0, 1.0)));
}

TEST_CASE("negative u is rejected") {
    CHECK_THROWS_AS(asymmetric_state(-1.0, 0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(symmetric_state(1.0, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(vstar(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(minimal_state(-1.0, 2.0, 1.0), std::domain_error);
}
