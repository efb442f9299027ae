#include "hp/invariants.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hp;
namespace {
constexpr double pi = std::numbers::pi;

Context flat_ctx(int n = 3, double r0 = 1.0, int l_max = 8, int res = 12) {
    return Context(BaseGeometry::flat_exterior(n, r0), sphere_quadrature(n, l_max, res));
}
} // namespace

TEST_SUITE_BEGIN("invariants");

TEST_CASE("unit-ball exterior: I1 = -2, I2 = 2 in every dimension") {
    for (int n = 3; n <= 7; ++n) {
        Context ctx(BaseGeometry::flat_exterior(n, 1.0), sphere_quadrature(n, 0, 1));
        auto inv = compute_invariants(ctx);
        CHECK(inv.I1 == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(inv.I2 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(inv.capacity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(inv.adm_mass_base == 0.0);
        CHECK(inv.I2 > 0.0);
    }
    // r0 = 2, n = 3: capacity 2, I1 = -4, I2 = 4 (hand scaling).
    auto inv2 = compute_invariants(flat_ctx(3, 2.0));
    CHECK(inv2.I1 == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(inv2.I2 == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("ADM mass under harmonic conformal change") {
    auto ctx = flat_ctx();
    auto one = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.0), 1.0);
    CHECK(std::abs(adm_mass(ctx, one)) < 1e-13);

    auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 2.0), 1.0); // 1 + 1/r
    CHECK(adm_mass(ctx, u) == doctest::Approx(2.0).epsilon(1e-12));

    // u = 1 + m/(2 r^{n-2}) has mass m.
    for (int n : {3, 5}) {
        Context c(BaseGeometry::flat_exterior(n, 1.0), sphere_quadrature(n, 0, 1));
        for (double m : {-2.0, 1.0, 4.0}) {
            auto um = harmonic_extension(c, BoundaryData::constant(c, 1.0 + 0.5 * m), 1.0);
            CHECK(adm_mass(c, um) == doctest::Approx(m).epsilon(1e-12));
        }
    }

    auto w = harmonic_extension(ctx, BoundaryData::constant(ctx, 0.5), 0.0);
    CHECK_THROWS_AS(adm_mass(ctx, w), std::invalid_argument);

    SUBCASE("mass transformation consistency (exact as computed)") {
        auto f = BoundaryData::constant(ctx, 1.37);
        auto uf = harmonic_extension(ctx, f, 1.0);
        CHECK(adm_mass(ctx, uf) - adm_mass(ctx, one) ==
              doctest::Approx(2.0 * expansion_coefficient(uf)).epsilon(1e-15));
    }
}

TEST_CASE("mu formula values (flat exterior, n = 3)") {
    auto ctx = flat_ctx();
    auto inv = compute_invariants(ctx);
    CHECK(mu_formula(inv, 3, 4 * pi) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(mu_formula(inv, 3, 64 * pi) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(mu_formula(inv, 3, 256 * pi) ==
          doctest::Approx(-2.0 + 4.0 * std::sqrt(2.0)).epsilon(1e-10)); // ~3.6569
    CHECK_THROWS_AS(mu_formula(inv, 3, -1.0), std::invalid_argument);

    SUBCASE("strictly increasing; A -> 0 limit is I1") {
        double prev = -1e300;
        for (double A = 1e-4; A < 1e5; A *= 3.7) {
            const double v = mu_formula(inv, 3, A);
            CHECK(v > prev);
            prev = v;
        }
        CHECK(mu_formula(inv, 3, 1e-14) == doctest::Approx(inv.I1).epsilon(1e-3));
    }
}

TEST_CASE("mu maximizer data") {
    auto ctx = flat_ctx();
    SUBCASE("flat: f0 is the constant (A/omega)^{1/p}") {
        auto f64 = mu_maximizer_data(ctx, 64 * pi);
        for (std::size_t i = 0; i < f64.size(); ++i)
            CHECK(f64[i] == doctest::Approx(2.0).epsilon(1e-12));
        auto f4 = mu_maximizer_data(ctx, 4 * pi);
        for (std::size_t i = 0; i < f4.size(); ++i)
            CHECK(f4[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("normalization on a warped base") {
        Context ctxw(schwarzschild_profile_base(3, 1.6), sphere_quadrature(3, 6, 10));
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> ad(1.0, 30.0);
        for (int t = 0; t < 5; ++t) {
            const double A = ad(rng) * ctxw.sigma_area();
            auto f0 = mu_maximizer_data(ctxw, A);
            CHECK(f0.lp_area(ctxw) == doctest::Approx(A).epsilon(1e-10));
        }
    }
}

TEST_CASE("mu_direct matches the formula and the unique maximizer") {
    auto ctx = flat_ctx();
    auto inv = compute_invariants(ctx);
    for (double A : {4 * pi, 16 * pi, 64 * pi, 256 * pi}) {
        MuResult r = mu_direct(ctx, A, 3, 555);
        const double expect = mu_formula(inv, 3, A);
        CHECK(std::abs(r.mu - expect) <= 1e-3 * std::max(1.0, std::abs(expect)));
        auto f0 = mu_maximizer_data(ctx, A);
        for (std::size_t i = 0; i < f0.size(); ++i)
            CHECK(std::abs(r.maximizer[i] - f0[i]) < 1e-4);
        CHECK(r.converged);
    }
}

TEST_CASE("concavity along normalized segments (inequality route)") {
    auto ctx = flat_ctx();
    const double A = 64 * pi;
    const double p = ctx.consts().p;
    std::mt19937_64 rng(8);
    std::normal_distribution<double> nd(0.0, 0.2);

    auto masses = [&](const BoundaryData& f) {
        return adm_mass(ctx, harmonic_extension(ctx, f, 1.0));
    };
    auto normalize = [&](std::vector<double> v) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += std::pow(v[i], p) * ctx.sigma_element(i);
        const double c = std::pow(A / s, 1.0 / p);
        for (auto& x : v) x *= c;
        return BoundaryData(ctx.grid, v);
    };

    std::vector<double> raw0(ctx.grid->node_count()), raw1(ctx.grid->node_count());
    for (std::size_t i = 0; i < raw0.size(); ++i) {
        raw0[i] = 1.0 + std::abs(nd(rng));
        raw1[i] = 1.0 + std::abs(nd(rng));
    }
    auto f0 = normalize(raw0), f1 = normalize(raw1);
    const double m0 = masses(f0), m1 = masses(f1);
    for (double t : {0.25, 0.5, 0.75}) {
        std::vector<double> seg(raw0.size());
        for (std::size_t i = 0; i < seg.size(); ++i) seg[i] = (1 - t) * f0[i] + t * f1[i];
        const double mt = masses(normalize(seg));
        CHECK(mt >= (1 - t) * m0 + t * m1 - 1e-10);
    }
}

TEST_CASE("invariance under radial harmonic conformal change (recomputed from scratch)") {
    auto ctx = flat_ctx(3, 1.0, 6, 10);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> bd(0.2, 3.0);
    for (int t = 0; t < 3; ++t) {
        const double b = bd(rng);
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.0 + b), 1.0);
        BaseGeometry composite = apply_radial_conformal(ctx, u);
        Context cctx(composite, sphere_quadrature(3, 0, 1));
        auto inv = compute_invariants(cctx);
        CHECK(inv.I1 == doctest::Approx(-2.0).epsilon(1e-6));
        CHECK(inv.I2 == doctest::Approx(2.0).epsilon(1e-6));
        // capacity/mass transformation laws hold against the from-scratch solve
        CHECK(inv.capacity == doctest::Approx(1.0 + b).epsilon(1e-8));
        CHECK(inv.adm_mass_base == doctest::Approx(2.0 * b).epsilon(1e-8));
    }
}

TEST_CASE("cap-concentrated data: masses decrease to I1") {
    Context ctx(BaseGeometry::flat_exterior(3, 1.0), sphere_quadrature(3, 0, 96));
    const double A = 64 * pi;
    auto demo = mu_lower_demo(ctx, A, {pi, 1.0, 0.3, 0.1, 0.05});
    REQUIRE(demo.size() == 5);
    CHECK(demo[0].second == doctest::Approx(2.0).epsilon(1e-10)); // eps = pi: uniform data
    for (std::size_t i = 1; i < demo.size(); ++i)
        CHECK(demo[i].second < demo[i - 1].second);
    for (const auto& [eps, m] : demo) CHECK(m >= -2.0 - 1e-10);
    CHECK(std::abs(demo.back().second - (-2.0)) < 0.05 * 2.0);

    CHECK_THROWS_AS(mu_lower_demo(ctx, A, {1e-6}), std::invalid_argument);
    Context ctx5(BaseGeometry::flat_exterior(5, 1.0), sphere_quadrature(5, 0, 1));
    CHECK_THROWS_AS(mu_lower_demo(ctx5, A, {0.3}), std::invalid_argument);
}

TEST_SUITE_END();
