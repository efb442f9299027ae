#include "hp/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hp {

InvariantSet compute_invariants(const Context& ctx) {
    InvariantSet inv;
    inv.capacity = capacity(ctx);
    inv.adm_mass_base = ctx.base.adm_mass();
    inv.I1 = inv.adm_mass_base - 2.0 * inv.capacity;

    const int n = ctx.n();
    const double omega = ctx.consts().omega;
    const double q = 2.0 * (n - 1) / double(n);
    HarmonicFunction phi = capacity_potential(ctx);
    double integral = 0.0;
    for (std::size_t node = 0; node < ctx.grid->node_count(); ++node) {
        const double dnu = phi.radial_derivative(ctx.r0(), node);
        integral += std::pow(dnu, q) * ctx.sigma_element(node);
    }
    inv.I2 = 2.0 / ((n - 2.0) * (n - 2.0)) *
             std::pow(integral / omega, double(n) / (n - 1));
    return inv;
}

double adm_mass(const Context& ctx, const HarmonicFunction& u) {
    if (u.value_at_infinity() != 1.0)
        throw std::invalid_argument("ADM mass needs a generalized-class factor (1 at infinity)");
    return ctx.base.adm_mass() + 2.0 * expansion_coefficient(u);
}

double invariant_I1(const Context& ctx) { return compute_invariants(ctx).I1; }
double invariant_I2(const Context& ctx) { return compute_invariants(ctx).I2; }

double mu_formula(const InvariantSet& inv, int n, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("mu requires A > 0");
    const Constants c = constants(n);
    return inv.I1 + std::sqrt(2.0 * inv.I2) * std::pow(A / c.omega, 1.0 / c.p);
}

BoundaryData mu_maximizer_data(const Context& ctx, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("maximizer data requires A > 0");
    const int n = ctx.n();
    const double p = ctx.consts().p;
    const double q = 2.0 * (n - 1) / double(n);
    std::vector<double> V = boundary_density_V(ctx);
    double vint = 0.0;
    for (std::size_t i = 0; i < V.size(); ++i) vint += std::pow(V[i], q) * ctx.sigma_element(i);
    const double scale = std::pow(A, 1.0 / p) * std::pow(vint, -1.0 / p);
    std::vector<double> f(V.size());
    for (std::size_t i = 0; i < V.size(); ++i)
        f[i] = scale * std::pow(V[i], (n - 2.0) / n);
    return BoundaryData(ctx.grid, std::move(f));
}

namespace {

// Projected ascent for the linearized mass objective over the p-sphere
// {f >= 0, \int f^p dA = A}.
struct AscentOut {
    std::vector<double> f;
    double mass = 0.0;
    bool converged = false;
};

AscentOut project_ascent(const Context& ctx, double A, const std::vector<double>& V,
                         double I1, std::vector<double> f, int max_iter) {
    const double p = ctx.consts().p;
    const std::size_t nn = f.size();
    auto rescale = [&](std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < nn; ++i)
            s += std::pow(std::max(v[i], 0.0), p) * ctx.sigma_element(i);
        const double c = std::pow(A / s, 1.0 / p);
        for (auto& x : v) x = std::max(x, 0.0) * c;
    };
    auto mass_of = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < nn; ++i) s += V[i] * v[i] * ctx.sigma_element(i);
        return I1 + 2.0 * s;
    };

    rescale(f);
    double cur = mass_of(f);
    double step = 0.5;
    bool converged = false;
    std::vector<double> trial(nn);
    for (int it = 0; it < max_iter; ++it) {
        // Gradient of the mass is 2 V dA; move along V and project back.
        double prev = cur;
        for (std::size_t i = 0; i < nn; ++i) trial[i] = f[i] + step * V[i] * ctx.sigma_area();
        rescale(trial);
        const double tm = mass_of(trial);
        if (tm >= cur) {
            double df = 0.0;
            for (std::size_t i = 0; i < nn; ++i) df = std::max(df, std::abs(trial[i] - f[i]));
            f = trial;
            cur = tm;
            step = std::min(step * 1.3, 8.0);
            if (df < 1e-13 && cur - prev < 1e-15 * std::abs(cur) + 1e-300) {
                converged = true;
                break;
            }
        } else {
            step *= 0.5;
            if (step < 1e-14) {
                converged = true;
                break;
            }
        }
    }
    return {std::move(f), cur, converged};
}

} // namespace

MuResult mu_direct(const Context& ctx, double A, int starts, std::uint64_t seed, par::Exec exec) {
    if (!(A > 0.0)) throw std::invalid_argument("mu requires A > 0");
    const std::vector<double> V = boundary_density_V(ctx);
    const double I1 = invariant_I1(ctx);
    const std::size_t nn = ctx.grid->node_count();

    std::vector<std::vector<double>> inits;
    inits.emplace_back(nn, 1.0); // constant start
    for (int s = 0; s < std::max(0, starts - 1); ++s) {
        std::mt19937_64 rng(seed + 7919ull * (s + 1));
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<double> f(nn);
        for (auto& x : f) x = std::abs(nd(rng)) + 1e-3;
        inits.push_back(std::move(f));
    }

    std::vector<AscentOut> outs(inits.size());
    par::for_each_index(inits.size(), exec, [&](std::size_t i) {
        outs[i] = project_ascent(ctx, A, V, I1, inits[i], 4000);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < outs.size(); ++i)
        if (outs[i].mass > outs[best].mass) best = i;

    MuResult res{A, outs[best].mass, BoundaryData(ctx.grid, outs[best].f),
                 MuResult::Method::direct, outs[best].converged};
    return res;
}

std::vector<std::pair<double, double>>
mu_lower_demo(const Context& ctx, double A, const std::vector<double>& cap_half_angles) {
    if (ctx.n() != 3)
        throw std::invalid_argument("cap-concentrated data needs angular resolution (n = 3)");
    if (!(A > 0.0)) throw std::invalid_argument("A > 0 required");
    const double p = ctx.consts().p;
    std::vector<std::pair<double, double>> out;
    for (double eps : cap_half_angles) {
        double cap_area = 0.0;
        for (std::size_t node = 0; node < ctx.grid->node_count(); ++node)
            if (ctx.grid->node_theta(node) <= eps) cap_area += ctx.sigma_element(node);
        if (cap_area <= 0.0)
            throw std::invalid_argument("cap half-angle below the grid resolution");
        const double c = std::pow(A / cap_area, 1.0 / p);
        std::vector<double> f(ctx.grid->node_count(), 0.0);
        for (std::size_t node = 0; node < ctx.grid->node_count(); ++node)
            if (ctx.grid->node_theta(node) <= eps) f[node] = c;
        HarmonicFunction u = harmonic_extension(ctx, BoundaryData(ctx.grid, std::move(f)), 1.0);
        out.emplace_back(eps, adm_mass(ctx, u));
    }
    return out;
}

} // namespace hp
