#include "hp/masschecks.hpp"
#include "hp/profile.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hp;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE_BEGIN("masschecks");

TEST_CASE("penrose right-hand side") {
    CHECK(penrose_rhs(3, 16 * pi * 4.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(penrose_rhs(3, 4 * pi) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(penrose_rhs(4, 2 * pi * pi) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(penrose_rhs(3, 0.0), std::invalid_argument);
}

TEST_CASE("mu vs alpha equality in the horizon regime") {
    Context ctx(BaseGeometry::flat_exterior(3, 1.0), sphere_quadrature(3, 0, 1));
    for (double A : {256 * pi, 1024 * pi}) {
        const double alpha = alpha_radial(ctx, A);
        auto rep = check_mu_alpha(ctx, A, alpha);
        CHECK(rep.applicable);
        CHECK(rep.satisfied);
        CHECK(std::abs(rep.margin) < 1e-6); // equality case of the horizon regime
        CHECK(!rep.hypotheses_note.empty());
    }
    SUBCASE("below the breakpoint the hypothesis fails") {
        auto rep = check_mu_alpha(ctx, 4 * pi, alpha_radial(ctx, 4 * pi));
        CHECK(!rep.applicable);
        CHECK(rep.hypotheses_note.find("inapplicable") != std::string::npos);
    }
}

TEST_CASE("I1 + I2 >= 0 saturates on the flat exterior") {
    Context ctx(BaseGeometry::flat_exterior(3, 1.0), sphere_quadrature(3, 0, 1));
    auto rep = check_I_sum(ctx);
    CHECK(rep.satisfied);
    CHECK(std::abs(rep.margin) < 1e-9);
    CHECK(rep.hypotheses_note.find("conditional consequence check") != std::string::npos);

    // r0 = 2: both invariants scale, the margin stays zero.
    Context ctx2(BaseGeometry::flat_exterior(3, 2.0), sphere_quadrature(3, 0, 1));
    CHECK(std::abs(check_I_sum(ctx2).margin) < 1e-9);

    // Schwarzschild profile lies in the same class: margin still ~ 0.
    Context ctxs(schwarzschild_profile_base(3, 2.0), sphere_quadrature(3, 0, 1));
    auto reps = check_I_sum(ctxs);
    CHECK(reps.satisfied);
    CHECK(std::abs(reps.margin) < 1e-6);
    CHECK(reps.hypotheses_note.find("verified") != std::string::npos);
}

TEST_CASE("ZAS mass of phi^k g") {
    for (int n : {3, 5}) {
        Context ctx(BaseGeometry::flat_exterior(n, 1.0), sphere_quadrature(n, 0, 1));
        auto z = zas_mass(ctx);
        CHECK(z.zas_mass == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(z.adm_mass_phik == doctest::Approx(-2.0).epsilon(1e-9));
    }
    SUBCASE("algebraic identity with the I-sum margin") {
        Context ctx(schwarzschild_profile_base(3, 1.4), sphere_quadrature(3, 0, 1));
        auto z = zas_mass(ctx);
        auto rep = check_I_sum(ctx);
        CHECK(z.adm_mass_phik - z.zas_mass == doctest::Approx(rep.margin).epsilon(1e-13));
    }
}

TEST_CASE("hypotheses note flags negative scalar curvature") {
    // rho = r + r^{0.9} has R < 0 somewhere on the tail.
    auto prof = std::make_shared<CallableProfile>(
        [](double r) { return r + std::pow(r, 0.9); },
        [](double r) { return 1.0 + 0.9 * std::pow(r, -0.1); },
        [](double r) { return -0.09 * std::pow(r, -1.1); }, 1.0, 1e4);
    Context ctx(BaseGeometry::warped_from_profile(3, 1.0, prof), sphere_quadrature(3, 0, 1));
    CHECK(scalar_curvature_note(ctx).find("NOT nonnegative") != std::string::npos);
}

TEST_SUITE_END();
