#include "hp/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hp {

namespace {

double ring_lp_area(const Context& ctx, const std::vector<double>& f) {
    const double p = ctx.consts().p;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::pow(std::max(f[i], 0.0), p) * ctx.sigma_ring_element(i);
    return s;
}

// Feasible-set projection on ring values: alternate box clamp and p-rescale,
// then saturate the area constraint exactly via f + s(C - f) (interpolation
// toward the cap; monotone in s).
void project_rings(const Context& ctx, std::vector<double>& f, double A, double C) {
    const double p = ctx.consts().p;
    for (int pass = 0; pass < 6; ++pass) {
        for (auto& x : f) x = std::clamp(x, 0.0, C);
        double cur = ring_lp_area(ctx, f);
        if (cur <= 0.0) {
            const double feas = std::min(C, std::pow(A / ctx.sigma_area(), 1.0 / p));
            std::fill(f.begin(), f.end(), feas);
            cur = ring_lp_area(ctx, f);
        }
        const double scale = std::pow(A / cur, 1.0 / p);
        for (auto& x : f) x *= scale;
        if (std::abs(scale - 1.0) < 1e-14) break;
    }
    for (auto& x : f) x = std::clamp(x, 0.0, C);
    const double cur = ring_lp_area(ctx, f);
    if (cur < A * (1 - 1e-13)) {
        // Bisection on s in f + s(C - f); h(1) >= 0 under the largeness
        // condition, which alpha_C validated up front.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            std::vector<double> trial(f);
            for (auto& x : trial) x = x + mid * (C - x);
            if (ring_lp_area(ctx, trial) >= A) hi = mid;
            else lo = mid;
            if (hi - lo < 1e-16) break;
        }
        for (auto& x : f) x = x + hi * (C - x);
    }
}

HarmonicFunction extend_rings(const Context& ctx, const std::vector<double>& f) {
    return harmonic_extension(ctx, BoundaryData::from_rings(ctx, f), 1.0);
}

// Supergradient of f -> |S|_{u_f^k g} at the active enclosure S, in ring
// coordinates. The off-Sigma part differentiates through the Poisson map
// df -> du, the contact part through f^p directly.
std::vector<double> area_supergradient(const Context& ctx, const HarmonicFunction& u,
                                       const std::vector<double>& f,
                                       const EnclosingSurface& S) {
    const AngularGrid& g = *ctx.grid;
    const int n = ctx.n();
    const double p = ctx.consts().p;
    const double r0 = ctx.r0();
    const std::size_t nr = g.ring_count();
    const int L = g.l_max();

    std::vector<double> R = S.ring_radii();
    std::vector<double> g2 = ring_tangential_grad2(g, R);

    std::vector<double> grad(nr, 0.0);
    std::vector<double> T(static_cast<std::size_t>(L) + 1, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
        if (R[i] - r0 <= kSnapTolRel * r0) {
            grad[i] += p * std::pow(std::max(f[i], 0.0), p - 1) * ctx.sigma_ring_element(i);
        } else {
            const double rho = ctx.base.rho(R[i]);
            const double elem = std::pow(rho, n - 2) * std::sqrt(rho * rho + g2[i]);
            const double uv = u.eval_ring(R[i], i);
            const double w = p * std::pow(uv, p - 1) * elem * g.ring_weight(i);
            for (int l = 0; l <= L; ++l)
                T[static_cast<std::size_t>(l)] +=
                    w * ctx.modes->mode(l).value(R[i]) * g.y_ring(l, i);
        }
    }
    for (std::size_t i = 0; i < nr; ++i) {
        double s = 0.0;
        for (int l = 0; l <= L; ++l) s += T[static_cast<std::size_t>(l)] * g.y_ring(l, i);
        grad[i] += s * g.ring_weight(i);
    }
    return grad;
}

struct AscentState {
    std::vector<double> f;
    double value = 0.0;
    bool converged = false;
    bool inner_ok = true;
};

AscentState ascend_one_start(const Context& ctx, double A, double C, std::vector<double> f,
                             int max_outer) {
    project_rings(ctx, f, A, C);
    HarmonicFunction u = extend_rings(ctx, f);
    MinEnclosureResult enc = min_enclosure(ctx, u, nullptr);
    double cur = enc.best.value;
    bool inner_ok = enc.best.converged;

    double step = 0.25;
    const double fscale = std::pow(A / ctx.sigma_area(), 1.0 / ctx.consts().p);
    int stalls = 0;
    for (int it = 0; it < max_outer && stalls < 3; ++it) {
        // Averaged supergradient over tied enclosures.
        std::vector<double> gsum(f.size(), 0.0);
        for (const auto& S : enc.ties) {
            auto gg = area_supergradient(ctx, u, f, S);
            for (std::size_t i = 0; i < f.size(); ++i) gsum[i] += gg[i] / enc.ties.size();
        }
        double gmax = 0.0;
        for (double v : gsum) gmax = std::max(gmax, std::abs(v));
        if (gmax == 0.0) break;

        bool accepted = false;
        while (step > 1e-7) {
            std::vector<double> trial(f);
            for (std::size_t i = 0; i < f.size(); ++i)
                trial[i] += step * fscale * gsum[i] / gmax;
            project_rings(ctx, trial, A, C);
            HarmonicFunction ut = extend_rings(ctx, trial);
            MinEnclosureResult et =
                min_enclosure(ctx, ut, enc.best.surface.is_sphere() ? nullptr : &enc.best.surface);
            if (et.best.value > cur * (1 + 1e-10)) {
                f = std::move(trial);
                u = std::move(ut);
                enc = std::move(et);
                cur = enc.best.value;
                inner_ok = inner_ok && enc.best.converged;
                step = std::min(step * 1.4, 1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) ++stalls;
    }
    return {std::move(f), cur, stalls >= 3 || max_outer == 0, inner_ok};
}

} // namespace

AlphaResult alpha_C(const Context& ctx, double A, double C, int starts, std::uint64_t seed,
                    par::Exec exec) {
    if (!(A > 0.0)) throw std::invalid_argument("alpha_C requires A > 0");
    if (!(C >= 1.0)) throw std::invalid_argument("alpha_C requires C >= 1");
    const double p = ctx.consts().p;
    const double sigma = ctx.sigma_area();
    if (std::pow(C, p) * sigma < A * (1 - 1e-12))
        throw InfeasibleConstraint(
            "infeasible constraint set: C^p |Sigma|_g < A, no data satisfies both bounds");

    const std::size_t nr = ctx.grid->ring_count();
    const double radial = std::min(C, std::pow(A / sigma, 1.0 / p));

    std::vector<std::vector<double>> inits;
    inits.emplace_back(nr, radial); // radial feasible point
    {
        auto f0 = mu_maximizer_data(ctx, A); // mass-profile maximizer data
        auto rings = ctx.grid->ring_average(f0.values());
        inits.push_back(std::move(rings));
    }
    for (int s = 0; s < std::max(0, starts - 1); ++s) {
        std::mt19937_64 rng(seed + 0x51ed270b * (s + 1));
        std::normal_distribution<double> nd(0.0, 0.35);
        std::vector<double> f(nr);
        for (auto& x : f) x = radial * std::exp(nd(rng));
        inits.push_back(std::move(f));
    }

    const int max_outer = 40;
    std::vector<AscentState> outs(inits.size());
    par::for_each_index(inits.size(), exec, [&](std::size_t i) {
        outs[i] = ascend_one_start(ctx, A, C, inits[i], max_outer);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < outs.size(); ++i)
        if (outs[i].value > outs[best].value) best = i;

    // Re-certify the winner with the full-strength inner solver.
    BoundaryData fbest = BoundaryData::from_rings(ctx, outs[best].f);
    HarmonicFunction ub = harmonic_extension(ctx, fbest, 1.0);
    MinAreaResult certified =
        ctx.n() == 3 && !ub.is_radial(1e-10)
            ? min_area_graph(ctx, ub, EnclosingSurface::sphere(ctx, ctx.r0()), 2, seed, exec)
            : min_area_radial(ctx, ub);

    AlphaResult res{A,
                    C,
                    certified.value,
                    std::move(fbest),
                    0.0,
                    outs[best].converged && outs[best].inner_ok && certified.converged};
    res.boundary_area_achieved = res.maximizer.lp_area(ctx);
    return res;
}

AlphaLimit alpha_limit(const Context& ctx, double A, const std::vector<double>& c_schedule,
                       int starts, std::uint64_t seed, par::Exec exec, double stop_rel) {
    if (c_schedule.empty()) throw std::invalid_argument("empty C schedule");
    const double p = ctx.consts().p;
    const double c_min = std::max(1.0, std::pow(A / ctx.sigma_area(), 1.0 / p));
    if (c_schedule.front() < c_min * (1 - 1e-12))
        throw std::invalid_argument("C schedule must start at or above the largeness threshold");
    for (std::size_t i = 1; i < c_schedule.size(); ++i)
        if (c_schedule[i] <= c_schedule[i - 1])
            throw std::invalid_argument("C schedule must increase");

    AlphaLimit out;
    for (double C : c_schedule) {
        out.trail.push_back(alpha_C(ctx, A, C, starts, seed, exec));
        const std::size_t k = out.trail.size();
        if (k >= 2) {
            const double a = out.trail[k - 2].value, b = out.trail[k - 1].value;
            if (std::abs(b - a) < stop_rel * std::abs(b)) {
                out.converged = true;
                out.value = b;
                return out;
            }
        }
    }
    out.converged = false;
    out.value = out.trail.back().value;
    return out;
}

double alpha_radial(const Context& ctx, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("alpha_radial requires A > 0");
    const double p = ctx.consts().p;
    const double c = std::pow(A / ctx.sigma_area(), 1.0 / p);
    HarmonicFunction u = harmonic_extension(ctx, BoundaryData::constant(ctx, c), 1.0);
    return min_area_radial(ctx, u).value;
}

ProfilePropertyReport check_profile_properties(const std::vector<double>& A_grid,
                                               const std::vector<double>& values,
                                               double rel_tol, double lipschitz_tol) {
    if (A_grid.size() != values.size() || A_grid.size() < 2)
        throw std::invalid_argument("property check needs a grid of >= 2 points");
    for (std::size_t i = 1; i < A_grid.size(); ++i)
        if (A_grid[i] <= A_grid[i - 1]) throw std::invalid_argument("A grid must increase");

    ProfilePropertyReport rep;
    rep.A_grid = A_grid;
    rep.alpha = values;
    rep.nondecreasing = true;
    rep.bounded_by_A = true;
    rep.ratio_nonincreasing = true;
    rep.lipschitz = true;
    rep.strict_below_persists = true;

    bool strictly_below_seen = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > A_grid[i] * (1 + rel_tol)) rep.bounded_by_A = false;
        if (i > 0) {
            if (values[i] < values[i - 1] * (1 - rel_tol)) rep.nondecreasing = false;
            const double r_prev = values[i - 1] / A_grid[i - 1];
            const double r_cur = values[i] / A_grid[i];
            if (r_cur > r_prev * (1 + rel_tol)) rep.ratio_nonincreasing = false;
            const double quot = (values[i] - values[i - 1]) / (A_grid[i] - A_grid[i - 1]);
            rep.max_lipschitz_quotient = std::max(rep.max_lipschitz_quotient, quot);
            if (quot > 1.0 + lipschitz_tol) rep.lipschitz = false;
        }
        const bool below = values[i] < A_grid[i] * (1 - rel_tol);
        if (strictly_below_seen && !below) rep.strict_below_persists = false;
        if (below) strictly_below_seen = true;
    }
    return rep;
}

ProfilePropertyReport profile_properties(const Context& ctx, const std::vector<double>& A_grid,
                                         double C, int starts, std::uint64_t seed,
                                         par::Exec exec) {
    std::vector<double> values(A_grid.size());
    for (std::size_t i = 0; i < A_grid.size(); ++i)
        values[i] = alpha_C(ctx, A_grid[i], C, starts, seed, exec).value;
    return check_profile_properties(A_grid, values);
}

MaximizerDiagnostics maximizer_diagnostics(const Context& ctx, const AlphaResult& result) {
    const int n = ctx.n();
    const double p = ctx.consts().p;
    HarmonicFunction u = harmonic_extension(ctx, result.maximizer, 1.0);

    MinEnclosureResult enc = min_enclosure(ctx, u, nullptr);
    EnclosingSurface tilde = outermost_enclosure(ctx, u, enc.ties);

    MaximizerDiagnostics d;
    d.contact_bound = result.A * std::pow(result.C, -p);
    d.eta0 = ctx.base.sphere_mean_curvature(ctx.r0());
    d.hbar_bound = d.eta0 * std::pow(result.C, -2.0 / (n - 2));

    double hmin = std::numeric_limits<double>::infinity();
    double hmax = -std::numeric_limits<double>::infinity();
    for (std::size_t node = 0; node < ctx.grid->node_count(); ++node) {
        if (tilde.on_sigma(node)) {
            d.contact_measure += ctx.sigma_element(node);
            d.f_minus_C_max_on_contact = std::max(
                d.f_minus_C_max_on_contact, std::abs(result.maximizer[node] - result.C));
            try {
                const double h = mean_curvature_conformal(ctx, u, tilde, node);
                hmin = std::min(hmin, h);
                hmax = std::max(hmax, h);
                d.has_contact = true;
            } catch (const std::domain_error&) {
                ++d.snap_boundary_nodes;
            }
        } else {
            const double h = mean_curvature_conformal(ctx, u, tilde, node);
            d.off_sigma_hbar_max = std::max(d.off_sigma_hbar_max, std::abs(h));
        }
    }
    if (d.has_contact) {
        d.hbar_min = hmin;
        d.hbar_max = hmax;
    }
    d.contact_within_bound = d.contact_measure <= d.contact_bound * (1 + 1e-9) + 1e-12;
    d.hbar_within_bound =
        !d.has_contact || (d.hbar_min >= -1e-9 && d.hbar_max <= d.hbar_bound * (1 + 1e-9) + 1e-12);
    return d;
}

std::optional<CounterexampleRecord> check_radial_exceedance(const Context& ctx,
                                                            const AlphaResult& result) {
    const double radial = alpha_radial(ctx, result.A);
    if (result.value <= radial * (1 + kExceedanceRel)) return std::nullopt;
    CounterexampleRecord rec;
    rec.A = result.A;
    rec.C = result.C;
    rec.value = result.value;
    rec.radial_value = radial;
    rec.excess_rel = result.value / radial - 1.0;
    rec.maximizer_values = result.maximizer.values();
    rec.note = "general axisymmetric search exceeded the radial restriction; "
               "candidate counterexample to the spherically-symmetric maximizer conjecture";
    return rec;
}

} // namespace hp
