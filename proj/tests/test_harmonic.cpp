#include "hp/harmonic.hpp"
#include "oracles.hpp"

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

BoundaryData random_band_limited(const Context& ctx, std::uint64_t seed, double floor = 0.05) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 0.3);
    std::vector<double> f(ctx.grid->node_count(), 1.0);
    for (int l = 1; l <= std::min(3, ctx.grid->l_max()); ++l)
        for (int m = -l; m <= l; ++m) {
            const double c = nd(rng);
            const std::size_t mi = ctx.grid->mode_index(l, m);
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += c * ctx.grid->y(mi, i);
        }
    for (auto& v : f) v = std::max(v, floor);
    return BoundaryData(ctx.grid, f);
}
} // namespace

TEST_SUITE_BEGIN("harmonic");

TEST_CASE("flat-exterior mode profiles are the closed forms") {
    auto base = BaseGeometry::flat_exterior(3, 1.0);
    auto m0 = ModeSolution::solve(base, 0);
    CHECK(m0.value(2.0) == doctest::Approx(0.5).epsilon(1e-14));       // 1/r
    CHECK(m0.derivative(2.0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(m0.decay_exponent() == 1.0);
    auto m1 = ModeSolution::solve(base, 1);
    CHECK(m1.value(2.0) == doctest::Approx(0.25).epsilon(1e-14));      // 1/r^2
    CHECK(m1.decay_exponent() == 2.0);
    CHECK(m0.decay_coefficient() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m0.flux_coefficient() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("warped l = 0 mode matches the quadrature oracle to 1e-8") {
    auto base = schwarzschild_profile_base(3, 2.0);
    auto m0 = ModeSolution::solve(base, 0);
    for (double r : {1.2, 2.0, 5.0, 20.0, 200.0}) {
        const double orc = oracle::mode0_value(base, r);
        CHECK(m0.value(r) == doctest::Approx(orc).epsilon(1e-8));
    }
    // Richardson tail estimate cross-checks the exact flux identity.
    CHECK(m0.decay_coefficient() == doctest::Approx(m0.flux_coefficient()).epsilon(1e-14));
    CHECK(m0.decay_coefficient_richardson() ==
          doctest::Approx(m0.flux_coefficient()).epsilon(1e-4));
}

TEST_CASE("mode ODE residual below 1e-8 (scaled sup norm)") {
    auto base = schwarzschild_profile_base(3, 2.0);
    const int n = 3;
    for (int l : {0, 1, 3}) {
        auto ms = ModeSolution::solve(base, l);
        double worst = 0.0;
        for (double r = 1.3; r < 500.0; r *= 1.7) {
            const double h = 1e-3 * r;
            // five-point first derivative of u' gives u''
            auto d = [&](double x) { return ms.derivative(x); };
            const double upp =
                (-d(r + 2 * h) + 8 * d(r + h) - 8 * d(r - h) + d(r - 2 * h)) / (12 * h);
            const double rhs = -(n - 1) * base.drho(r) / base.rho(r) * ms.derivative(r) +
                               l * (l + n - 2) / (base.rho(r) * base.rho(r)) * ms.value(r);
            worst = std::max(worst, std::abs(upp - rhs) * r * r / std::abs(ms.value(r)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("harmonic extension closed forms") {
    auto ctx = flat_ctx();
    SUBCASE("phi = 1 - 1/r") {
        auto phi = capacity_potential(ctx);
        CHECK(phi.eval(2.0, 0) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(phi.eval(10.0, 3) == doctest::Approx(0.9).epsilon(1e-13));
        CHECK(phi.eval(1.0, 0) == 0.0); // trace convention
        CHECK_THROWS_AS(phi.eval(0.5, 0), std::out_of_range);
    }
    SUBCASE("constant data: u = 1 + (c-1)/r") {
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 3.0), 1.0);
        CHECK(u.eval(4.0, 1) == doctest::Approx(1.5).epsilon(1e-13));
        CHECK(u.is_radial());
    }
    SUBCASE("f = 1 + Y10/2: u = 1 + Y10/(2 r^2)") {
        std::vector<double> f(ctx.grid->node_count());
        const std::size_t mi = ctx.grid->mode_index(1, 0);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 + 0.5 * ctx.grid->y(mi, i);
        auto u = harmonic_extension(ctx, BoundaryData(ctx.grid, f), 1.0);
        for (std::size_t node : {std::size_t(0), std::size_t(5), f.size() - 1}) {
            const double expect = 1.0 + 0.5 * ctx.grid->y(mi, node) / 9.0;
            CHECK(u.eval(3.0, node) == doctest::Approx(expect).epsilon(1e-12));
        }
        CHECK(u.is_axisymmetric());
        CHECK(!u.is_radial());
    }
    SUBCASE("u_A at A = 64 pi evaluates to 1.5 at r = 2") {
        const double c = std::pow(64 * pi / (4 * pi), 0.25);
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, c), 1.0);
        CHECK(u.eval(2.0, 0) == doctest::Approx(1.5).epsilon(1e-13));
    }
    SUBCASE("f == 1 extends to u == 1") {
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.0), 1.0);
        for (double r : {1.0, 2.5, 40.0})
            CHECK(u.eval(r, 2) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("angle evaluation agrees with node evaluation") {
        auto f = random_band_limited(ctx, 4242);
        auto u = harmonic_extension(ctx, f, 1.0);
        for (std::size_t node : {std::size_t(1), std::size_t(17), std::size_t(40)})
            CHECK(u.eval_at_angles(2.3, ctx.grid->node_theta(node), ctx.grid->node_phi(node)) ==
                  doctest::Approx(u.eval(2.3, node)).epsilon(1e-13));
    }
    SUBCASE("negative data rejected in the generalized class") {
        CHECK_THROWS_AS(harmonic_extension(ctx, BoundaryData::constant(ctx, -0.5), 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("expansion coefficients") {
    auto ctx = flat_ctx();
    CHECK(expansion_coefficient(capacity_potential(ctx)) == doctest::Approx(-1.0).epsilon(1e-13));
    auto one = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.0), 1.0);
    CHECK(std::abs(expansion_coefficient(one)) < 1e-14);
    const double c = std::pow(64 * pi / (4 * pi), 0.25);
    auto uA = harmonic_extension(ctx, BoundaryData::constant(ctx, c), 1.0);
    CHECK(expansion_coefficient(uA) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("capacity") {
    for (int n = 3; n <= 7; ++n) {
        Context ctx(BaseGeometry::flat_exterior(n, 1.0), sphere_quadrature(n, 0, 1));
        CHECK(capacity(ctx) == doctest::Approx(1.0).epsilon(1e-13));
    }
    auto ctx2 = flat_ctx(3, 2.0);
    CHECK(capacity(ctx2) == doctest::Approx(2.0).epsilon(1e-13));

    Context ctxs(schwarzschild_profile_base(3, 2.0), sphere_quadrature(3, 0, 1));
    CHECK(capacity(ctxs) == doctest::Approx(2.0).epsilon(1e-8)); // hand value
    CHECK(capacity(ctxs) == doctest::Approx(oracle::capacity_quadrature(ctxs.base)).epsilon(1e-8));
    CHECK(capacity(ctxs) > 0.0);
}

TEST_CASE("boundary density V") {
    auto ctx = flat_ctx();
    auto V = boundary_density_V(ctx);
    for (double v : V) CHECK(v == doctest::Approx(1.0 / (4 * pi)).epsilon(1e-12));

    Context ctx4(BaseGeometry::flat_exterior(4, 1.0), sphere_quadrature(4, 0, 1));
    auto V4 = boundary_density_V(ctx4);
    CHECK(V4[0] == doctest::Approx(1.0 / constants(4).omega).epsilon(1e-12));

    SUBCASE("representation identity over 20 random data (Green route)") {
        Context ctxw(schwarzschild_profile_base(3, 1.3), sphere_quadrature(3, 6, 10));
        auto Vw = boundary_density_V(ctxw);
        for (int t = 0; t < 20; ++t) {
            auto f = random_band_limited(ctxw, 500 + t, -10.0); // sign-free test data
            auto w = harmonic_extension(ctxw, f, 0.0);
            double lhs = 0.0;
            for (std::size_t i = 0; i < Vw.size(); ++i)
                lhs += Vw[i] * f[i] * ctxw.sigma_element(i);
            const double rhs = expansion_coefficient(w);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("maximum principle and linearity") {
    auto ctx = flat_ctx();
    SUBCASE("positivity and upper bound") {
        for (int t = 0; t < 5; ++t) {
            auto f = random_band_limited(ctx, 900 + t);
            auto u = harmonic_extension(ctx, f, 1.0);
            const double cmax = f.max_value();
            for (double r : {1.02, 1.3, 4.0, 50.0})
                for (std::size_t node = 0; node < ctx.grid->node_count(); node += 3) {
                    const double v = u.eval(r, node);
                    CHECK(v > 0.0);
                    CHECK(v <= std::max(cmax, 1.0) + 1e-9);
                }
        }
    }
    SUBCASE("linearity node-wise to 1e-10") {
        auto f1 = random_band_limited(ctx, 31, -10.0);
        auto f2 = random_band_limited(ctx, 32, -10.0);
        const double a = 1.7, b = -0.6;
        std::vector<double> combo(ctx.grid->node_count());
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = a * f1[i] + b * f2[i];
        auto uc = harmonic_extension(ctx, BoundaryData(ctx.grid, combo), 0.0);
        auto u1 = harmonic_extension(ctx, f1, 0.0);
        auto u2 = harmonic_extension(ctx, f2, 0.0);
        for (double r : {1.5, 6.0})
            for (std::size_t node = 0; node < ctx.grid->node_count(); node += 5)
                CHECK(uc.eval(r, node) ==
                      doctest::Approx(a * u1.eval(r, node) + b * u2.eval(r, node))
                          .epsilon(1e-10));
    }
}

TEST_CASE("conformal quotient") {
    auto ctx = flat_ctx();
    SUBCASE("phi / 1 = phi") {
        auto phi = capacity_potential(ctx);
        auto one = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.0), 1.0);
        auto q = conformal_quotient(ctx, phi, one);
        CHECK(q.eval(3.0, 0) == doctest::Approx(phi.eval(3.0, 0)).epsilon(1e-14));
    }
    SUBCASE("(1 - 1/r)/(1 + 1/r) has expansion coefficient -2") {
        auto phi = capacity_potential(ctx);
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 2.0), 1.0);
        auto q = conformal_quotient(ctx, phi, u);
        CHECK(q.eval(3.0, 1) == doctest::Approx((3.0 - 1) / (3.0 + 1)).epsilon(1e-13));
        CHECK(q.expansion_coefficient() == doctest::Approx(-2.0).epsilon(1e-9));
    }
    SUBCASE("capacity transformation law for random smooth data (1e-8)") {
        for (int t = 0; t < 4; ++t) {
            auto f = random_band_limited(ctx, 77 + t, 0.2);
            auto u = harmonic_extension(ctx, f, 1.0);
            auto q = conformal_quotient(ctx, capacity_potential(ctx), u);
            const double lhs = -q.expansion_coefficient(); // C of u^k g, tail route
            const double rhs = capacity(ctx) + expansion_coefficient(u);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
    SUBCASE("quotient is harmonic for the conformal metric (residual check)") {
        // conformal Laplacian identity: Delta_g(u q) = u^{(n+2)/(n-2)} Delta-bar q, so the
        // FD radial Laplacian of u q must vanish for radial data.
        auto phi = capacity_potential(ctx);
        auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 1.8), 1.0);
        auto q = conformal_quotient(ctx, phi, u);
        for (double r : {1.6, 3.0, 9.0}) {
            const double h = 1e-3 * r;
            auto prod = [&](double x) { return u.eval(x, 0) * q.eval(x, 0); };
            const double lap = (prod(r + h) - 2 * prod(r) + prod(r - h)) / (h * h) +
                               2.0 / r * (prod(r + h) - prod(r - h)) / (2 * h);
            CHECK(std::abs(lap) < 1e-7);
        }
    }
    SUBCASE("positivity floor") {
        auto phi = capacity_potential(ctx);
        // phi itself vanishes on Sigma: dividing by it trips the floor.
        CHECK_THROWS_AS(conformal_quotient(ctx, phi, phi).eval(1.0, 0) /* phi(r0)=0 */,
                        std::exception);
    }
}

TEST_CASE("radial conformal composite reproduces Schwarzschild") {
    auto ctx = flat_ctx();
    auto u = harmonic_extension(ctx, BoundaryData::constant(ctx, 2.0), 1.0); // 1 + 1/r
    BaseGeometry composite = apply_radial_conformal(ctx, u);
    CHECK(composite.adm_mass() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(scalar_curvature_radial(composite, 3.0)) < 1e-7);
    Context cctx(composite, sphere_quadrature(3, 0, 1));
    CHECK(capacity(cctx) == doctest::Approx(2.0).epsilon(1e-8));
    // boundary area equals the conformal boundary area f^p |Sigma|_g
    CHECK(composite.boundary_area() == doctest::Approx(16.0 * 4 * pi).epsilon(1e-10));
}

TEST_SUITE_END();
