#include "hp/minarea.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hp {

namespace {

// 3-point derivative on a nonuniform grid (quadratic fit); one-sided at the
// ends, zero for fewer than 2 points.
double nonuniform_d1(const std::vector<double>& x, const std::vector<double>& f, std::size_t i) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    if (n == 2) return (f[1] - f[0]) / (x[1] - x[0]);
    std::size_t a, b, c;
    if (i == 0) { a = 0; b = 1; c = 2; }
    else if (i == n - 1) { a = n - 3; b = n - 2; c = n - 1; }
    else { a = i - 1; b = i; c = i + 1; }
    const double xa = x[a], xb = x[b], xc = x[c], xi = x[i];
    const double la = (2 * xi - xb - xc) / ((xa - xb) * (xa - xc));
    const double lb = (2 * xi - xa - xc) / ((xb - xa) * (xb - xc));
    const double lc = (2 * xi - xa - xb) / ((xc - xa) * (xc - xb));
    return f[a] * la + f[b] * lb + f[c] * lc;
}

struct NodeGradient {
    double dth, dph; // centered tangential gradient of R at a node
};

// Mean of squared one-sided differences along a (possibly nonuniform) line of
// samples. Second-order consistent for smooth data, exactly zero for constant
// data, and it prices sawtooth oscillation that a centered stencil would
// silently cancel (the descent would otherwise exploit that null mode).
double onesided_grad2(const std::vector<double>& x, const std::vector<double>& f,
                      std::size_t i) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    int k = 0;
    if (i > 0) {
        const double d = (f[i] - f[i - 1]) / (x[i] - x[i - 1]);
        s += d * d;
        ++k;
    }
    if (i + 1 < n) {
        const double d = (f[i + 1] - f[i]) / (x[i + 1] - x[i]);
        s += d * d;
        ++k;
    }
    return k > 0 ? s / k : 0.0;
}

// |grad R|^2 at every node: one-sided mean in theta down each azimuth column,
// plus the periodic azimuth part scaled by 1/sin^2(theta).
std::vector<double> node_grad2(const AngularGrid& g, const std::vector<double>& R) {
    const std::size_t nr = g.ring_count(), na = g.azimuth_count();
    std::vector<double> out(R.size(), 0.0);
    std::vector<double> th(nr), col(nr);
    for (std::size_t i = 0; i < nr; ++i) th[i] = g.ring_theta(i);
    for (std::size_t j = 0; j < na; ++j) {
        for (std::size_t i = 0; i < nr; ++i) col[i] = R[g.node_of(i, j)];
        for (std::size_t i = 0; i < nr; ++i)
            out[g.node_of(i, j)] += onesided_grad2(th, col, i);
    }
    if (na >= 2) {
        const double dphi = 2.0 * std::numbers::pi / double(na);
        for (std::size_t i = 0; i < nr; ++i) {
            const double s = std::sin(th[i]);
            if (s <= 0.0) continue;
            for (std::size_t j = 0; j < na; ++j) {
                const double fc = R[g.node_of(i, j)];
                const double fp = R[g.node_of(i, (j + 1) % na)];
                const double fm = R[g.node_of(i, (j + na - 1) % na)];
                const double dp = (fp - fc) / dphi, dm = (fc - fm) / dphi;
                out[g.node_of(i, j)] += 0.5 * (dp * dp + dm * dm) / (s * s);
            }
        }
    }
    return out;
}

// Centered tangential gradient vector (used for directional derivatives of u
// on smooth surfaces, not for the area element).
std::vector<NodeGradient> node_gradients(const AngularGrid& g, const std::vector<double>& R) {
    const std::size_t nr = g.ring_count(), na = g.azimuth_count();
    std::vector<NodeGradient> out(R.size(), {0.0, 0.0});
    std::vector<double> th(nr), col(nr);
    for (std::size_t i = 0; i < nr; ++i) th[i] = g.ring_theta(i);
    for (std::size_t j = 0; j < na; ++j) {
        for (std::size_t i = 0; i < nr; ++i) col[i] = R[g.node_of(i, j)];
        for (std::size_t i = 0; i < nr; ++i)
            out[g.node_of(i, j)].dth = nonuniform_d1(th, col, i);
    }
    if (na >= 3) {
        const double dphi = 2.0 * std::numbers::pi / double(na);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < na; ++j) {
                const double fp = R[g.node_of(i, (j + 1) % na)];
                const double fm = R[g.node_of(i, (j + na - 1) % na)];
                out[g.node_of(i, j)].dph = (fp - fm) / (2.0 * dphi);
            }
    }
    return out;
}

// Base-metric area of the graph (no conformal factor, no mask); the first
// variation of this gives the base mean curvature.
double base_graph_area(const Context& ctx, const std::vector<double>& R) {
    const AngularGrid& g = *ctx.grid;
    const int n = ctx.n();
    auto g2 = node_grad2(g, R);
    double s = 0.0;
    for (std::size_t node = 0; node < R.size(); ++node) {
        const double rho = ctx.base.rho(R[node]);
        s += std::pow(rho, n - 2) * std::sqrt(rho * rho + g2[node]) * g.node_weight(node);
    }
    return s;
}

// Golden-section minimization; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = f(c); }
        else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = f(d); }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

} // namespace

EnclosingSurface::EnclosingSurface(std::shared_ptr<const AngularGrid> grid,
                                   std::vector<double> radii, double r0)
    : grid_(std::move(grid)), radii_(std::move(radii)), r0_(r0) {
    if (!grid_ || radii_.size() != grid_->node_count())
        throw std::invalid_argument("surface radii / grid mismatch");
    for (double& r : radii_) {
        if (r < r0_ * (1 - 1e-12)) throw std::invalid_argument("surface radius below r0");
        if (r - r0_ <= kSnapTolRel * r0_) r = r0_;
    }
}

EnclosingSurface EnclosingSurface::sphere(const Context& ctx, double r) {
    return EnclosingSurface(ctx.grid, std::vector<double>(ctx.grid->node_count(), r), ctx.r0());
}

EnclosingSurface EnclosingSurface::from_rings(const Context& ctx,
                                              std::span<const double> ring_radii) {
    return EnclosingSurface(ctx.grid, ctx.grid->expand_rings(ring_radii), ctx.r0());
}

std::vector<bool> EnclosingSurface::coincidence_mask() const {
    std::vector<bool> m(radii_.size());
    for (std::size_t i = 0; i < radii_.size(); ++i) m[i] = on_sigma(i);
    return m;
}

bool EnclosingSurface::is_sphere(double tol) const {
    const double r = radii_[0];
    for (double v : radii_)
        if (std::abs(v - r) > tol * r0_) return false;
    return true;
}

bool EnclosingSurface::entirely_on_sigma() const {
    for (std::size_t i = 0; i < radii_.size(); ++i)
        if (!on_sigma(i)) return false;
    return true;
}

std::vector<double> EnclosingSurface::ring_radii() const {
    return grid_->ring_average(radii_);
}

AreaBreakdown surface_area(const Context& ctx, const HarmonicFunction& u,
                           const EnclosingSurface& S) {
    const AngularGrid& g = *ctx.grid;
    const int n = ctx.n();
    const double p = ctx.consts().p;
    const auto& R = S.radii();
    auto g2 = node_grad2(g, R);
    AreaBreakdown out;
    const auto& f = u.boundary_data();
    for (std::size_t node = 0; node < R.size(); ++node) {
        if (S.on_sigma(node)) {
            out.on_sigma += std::pow(f[node], p) * ctx.sigma_element(node);
        } else {
            const double rho = ctx.base.rho(R[node]);
            const double elem = std::pow(rho, n - 2) * std::sqrt(rho * rho + g2[node]);
            const double uv = u.eval(R[node], node);
            out.off_sigma += std::pow(uv, p) * elem * g.node_weight(node);
        }
    }
    out.total = out.on_sigma + out.off_sigma;
    return out;
}

namespace {

// Area functional over ring radii (axisymmetric surfaces). Handles general
// (non-axisymmetric) u by summing each ring's azimuth nodes.
double ring_area(const Context& ctx, const HarmonicFunction& u, const std::vector<double>& R,
                 bool u_axisym) {
    const AngularGrid& g = *ctx.grid;
    const int n = ctx.n();
    const double p = ctx.consts().p;
    const double r0 = ctx.r0();
    const std::size_t nr = g.ring_count(), na = g.azimuth_count();
    static thread_local std::vector<double> th, g2;
    th.resize(nr);
    g2.resize(nr);
    for (std::size_t i = 0; i < nr; ++i) th[i] = g.ring_theta(i);
    for (std::size_t i = 0; i < nr; ++i) g2[i] = onesided_grad2(th, R, i);

    const auto& f = u.boundary_data();
    double s = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        if (R[i] - r0 <= kSnapTolRel * r0) {
            if (u_axisym) {
                s += std::pow(f[g.node_of(i, 0)], p) * ctx.sigma_ring_element(i);
            } else {
                double acc = 0.0;
                for (std::size_t j = 0; j < na; ++j) {
                    const std::size_t node = g.node_of(i, j);
                    acc += std::pow(f[node], p) * ctx.sigma_element(node);
                }
                s += acc;
            }
        } else {
            const double rho = ctx.base.rho(R[i]);
            const double elem = std::pow(rho, n - 2) * std::sqrt(rho * rho + g2[i]);
            if (u_axisym) {
                const double uv = u.eval_ring(R[i], i);
                s += std::pow(uv, p) * elem * g.ring_weight(i);
            } else {
                double acc = 0.0;
                for (std::size_t j = 0; j < na; ++j) {
                    const std::size_t node = g.node_of(i, j);
                    acc += std::pow(u.eval(R[i], node), p) * g.node_weight(node);
                }
                s += acc * elem;
            }
        }
    }
    return s;
}

// Area of the sphere {r = const} under u^k g (interior formula).
double sphere_area_at(const Context& ctx, const HarmonicFunction& u, double r, bool u_axisym) {
    const int n = ctx.n();
    const double p = ctx.consts().p;
    const double rhon = std::pow(ctx.base.rho(r), n - 1);
    if (u_axisym) {
        double s = 0.0;
        for (std::size_t i = 0; i < ctx.grid->ring_count(); ++i)
            s += std::pow(u.eval_ring(r, i), p) * ctx.grid->ring_weight(i);
        return s * rhon;
    }
    double s = 0.0;
    for (std::size_t node = 0; node < ctx.grid->node_count(); ++node)
        s += std::pow(u.eval(r, node), p) * ctx.grid->node_weight(node);
    return s * rhon;
}

struct SphereScan {
    double r = 0.0, value = 0.0;
    bool interior = false; // a bracketed interior minimum (vs window edge)
};

// Dense scan + golden refinement of the sphere-area function; returns every
// refined local minimum plus the window endpoints.
std::vector<SphereScan> scan_spheres(const Context& ctx, const HarmonicFunction& u,
                                     bool u_axisym) {
    const double r0 = ctx.r0();
    const double R = std::min(kScanWindowFactor * r0, ctx.base.r_max());
    const int N = 2400;
    std::vector<double> rs(N), as(N);
    for (int i = 0; i < N; ++i) {
        rs[i] = r0 * std::pow(R / r0, double(i) / (N - 1));
        as[i] = sphere_area_at(ctx, u, rs[i], u_axisym);
    }
    auto f = [&](double r) { return sphere_area_at(ctx, u, r, u_axisym); };
    std::vector<SphereScan> out;
    out.push_back({rs[0], as[0], false});
    out.push_back({rs[N - 1], as[N - 1], false});
    for (int i = 1; i + 1 < N; ++i) {
        if (as[i] <= as[i - 1] && as[i] <= as[i + 1]) {
            auto [x, v] = golden_min(f, rs[i - 1], rs[i + 1], 1e-11 * r0);
            out.push_back({x, v, true});
        }
    }
    return out;
}

} // namespace

MinAreaResult min_area_radial(const Context& ctx, const HarmonicFunction& u) {
    if (!u.is_radial(1e-10))
        throw std::invalid_argument("min_area_radial requires radial (l = 0) data");
    const double r0 = ctx.r0();
    const double boundary_value = u.boundary_data().lp_area(ctx); // contact convention at Sigma

    auto candidates = scan_spheres(ctx, u, true);
    // Replace the r0 endpoint value with the boundary convention.
    for (auto& c : candidates)
        if (c.r <= r0 * (1 + 1e-12)) c.value = boundary_value;

    double vmin = candidates[0].value;
    for (const auto& c : candidates) vmin = std::min(vmin, c.value);
    // Outermost among ties.
    double rbest = 0.0, vbest = 0.0;
    bool interior_best = false;
    for (const auto& c : candidates)
        if (c.value <= vmin * (1 + 1e-9) && c.r > rbest) {
            rbest = c.r;
            vbest = c.value;
            interior_best = c.interior;
        }

    MinAreaResult res{vbest, EnclosingSurface::sphere(ctx, rbest), true, ""};
    const double window = std::min(kScanWindowFactor * r0, ctx.base.r_max());
    if (!interior_best && rbest > 0.999 * window) {
        res.converged = false;
        res.note = "scan window exhausted without interior minimum bracketing";
    }
    return res;
}

namespace {

struct DescentResult {
    std::vector<double> R;
    double value = 0.0;
    bool converged = true;
};

DescentResult descend_rings(const Context& ctx, const HarmonicFunction& u,
                            std::vector<double> R, bool u_axisym, int max_iter = 600) {
    const double r0 = ctx.r0();
    const std::size_t nr = R.size();
    auto clamp_snap = [&](std::vector<double>& v) {
        for (double& x : v) {
            if (x < r0) x = r0;
            else if (x - r0 <= kSnapTolRel * r0) x = r0;
        }
    };
    clamp_snap(R);
    auto area = [&](const std::vector<double>& v) { return ring_area(ctx, u, v, u_axisym); };

    double cur = area(R);
    const double delta = 1e-6 * r0;
    double step = 0.05 * r0;
    std::vector<double> g(nr), trial(nr);
    bool budget_exhausted = false;
    int it = 0;
    for (; it < max_iter; ++it) {
        // Central differences; one-sided on the clamp boundary.
        for (std::size_t i = 0; i < nr; ++i) {
            std::vector<double>& v = trial;
            v = R;
            if (R[i] - r0 < delta) {
                v[i] = R[i] + delta;
                g[i] = (area(v) - cur) / delta;
            } else {
                v[i] = R[i] + delta;
                const double ap = area(v);
                v[i] = R[i] - delta;
                const double am = area(v);
                g[i] = (ap - am) / (2 * delta);
            }
        }
        double gmax = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            // Clamped coordinates cannot move inward: project the gradient.
            if (R[i] <= r0 && g[i] > 0.0) g[i] = 0.0;
            gmax = std::max(gmax, std::abs(g[i]));
        }
        if (gmax * r0 < 1e-13 * std::max(cur, 1e-300)) break;

        bool accepted = false;
        while (step >= kStepFloorRel * r0) {
            for (std::size_t i = 0; i < nr; ++i) trial[i] = R[i] - step * g[i] / gmax;
            clamp_snap(trial);
            const double av = area(trial);
            if (av < cur - 1e-15 * std::abs(cur)) {
                R = trial;
                cur = av;
                accepted = true;
                step = std::min(step * 1.5, 0.2 * r0);
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // step floor: stationary within tolerance
    }
    budget_exhausted = (it == max_iter);
    return {std::move(R), cur, !budget_exhausted};
}

} // namespace

MinAreaResult min_area_graph(const Context& ctx, const HarmonicFunction& u,
                             const EnclosingSurface& init, int starts, std::uint64_t seed,
                             par::Exec exec) {
    if (ctx.n() != 3) throw std::invalid_argument("min_area_graph supports n = 3 only");
    const double r0 = ctx.r0();
    const std::size_t nr = ctx.grid->ring_count();
    const bool u_axisym = u.is_axisymmetric(1e-11);

    std::vector<std::vector<double>> inits;
    inits.push_back(init.ring_radii());
    inits.emplace_back(nr, r0);            // Sigma
    inits.emplace_back(nr, 5.0 * r0);      // pushed-out sphere
    {
        auto scans = scan_spheres(ctx, u, u_axisym);
        double rb = scans[0].r, vb = scans[0].value;
        for (const auto& c : scans)
            if (c.value < vb) { vb = c.value; rb = c.r; }
        inits.emplace_back(nr, rb);        // best sphere
    }
    for (int s = 0; s < starts; ++s) {
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (s + 1));
        std::normal_distribution<double> nd(0.0, 0.6);
        std::vector<double> R(nr);
        for (auto& x : R) x = r0 * std::exp(std::abs(nd(rng)));
        inits.push_back(std::move(R));
    }

    std::vector<DescentResult> results(inits.size());
    par::for_each_index(inits.size(), exec, [&](std::size_t i) {
        results[i] = descend_rings(ctx, u, inits[i], u_axisym);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[best].value) best = i;

    MinAreaResult out{results[best].value,
                      EnclosingSurface::from_rings(ctx, results[best].R),
                      results[best].converged, ""};
    if (!results[best].converged) out.note = "descent iteration budget exhausted";
    return out;
}

MinEnclosureResult min_enclosure(const Context& ctx, const HarmonicFunction& u,
                                 const EnclosingSurface* warm_start, double tie_rel) {
    const double r0 = ctx.r0();
    const std::size_t nr = ctx.grid->ring_count();
    const bool u_axisym = u.is_axisymmetric(1e-11);

    if (ctx.n() != 3) {
        MinAreaResult r = min_area_radial(ctx, u);
        return {r, {r.surface}};
    }
    if (u.is_radial(1e-10)) {
        // The sphere scan is exact among spheres; one descent from its
        // optimum guards the graph class (any undercut is taken, not hidden).
        MinAreaResult r = min_area_radial(ctx, u);
        auto d = descend_rings(ctx, u, r.surface.ring_radii(), true);
        if (d.value < r.value) {
            r.value = d.value;
            r.surface = EnclosingSurface::from_rings(ctx, d.R);
        }
        return {r, {r.surface}};
    }

    std::vector<std::vector<double>> inits;
    if (warm_start) inits.push_back(warm_start->ring_radii());
    {
        auto scans = scan_spheres(ctx, u, u_axisym);
        double rb = scans[0].r, vb = scans[0].value;
        for (const auto& c : scans)
            if (c.value < vb) { vb = c.value; rb = c.r; }
        inits.emplace_back(nr, rb);
    }
    inits.emplace_back(nr, r0);

    std::vector<DescentResult> results(inits.size());
    par::for_each_index(inits.size(), par::Exec::serial, [&](std::size_t i) {
        results[i] = descend_rings(ctx, u, inits[i], u_axisym);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[best].value) best = i;

    MinEnclosureResult out{MinAreaResult{results[best].value,
                                         EnclosingSurface::from_rings(ctx, results[best].R),
                                         results[best].converged, ""},
                           {}};
    // Distinct ties within tolerance.
    for (const auto& r : results) {
        if (r.value > results[best].value * (1 + tie_rel)) continue;
        bool distinct = true;
        for (const auto& t : out.ties) {
            double d = 0.0;
            auto tr = t.ring_radii();
            for (std::size_t i = 0; i < nr; ++i) d = std::max(d, std::abs(tr[i] - r.R[i]));
            if (d <= 1e-6 * r0) { distinct = false; break; }
        }
        if (distinct) out.ties.push_back(EnclosingSurface::from_rings(ctx, r.R));
    }
    return out;
}

EnclosingSurface outermost_enclosure(const Context& ctx, const HarmonicFunction& u,
                                     const std::vector<EnclosingSurface>& candidates,
                                     double area_tol_rel) {
    if (candidates.empty()) throw std::invalid_argument("no candidate enclosures");
    std::vector<double> areas(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        areas[i] = surface_area(ctx, u, candidates[i]).total;
    const double amin = *std::min_element(areas.begin(), areas.end());
    for (double a : areas)
        if (a > amin * (1 + area_tol_rel))
            throw std::invalid_argument("candidates are not all within area tolerance of the minimum");
    if (candidates.size() == 1) return candidates[0];

    std::vector<double> rmax(candidates[0].radii());
    for (std::size_t i = 1; i < candidates.size(); ++i)
        for (std::size_t j = 0; j < rmax.size(); ++j)
            rmax[j] = std::max(rmax[j], candidates[i].radius(j));

    if (ctx.n() == 3) {
        const bool u_axisym = u.is_axisymmetric(1e-11);
        auto res = descend_rings(ctx, u, ctx.grid->ring_average(rmax), u_axisym);
        if (res.value > amin * (1 + area_tol_rel))
            throw std::runtime_error(
                "ambiguous outermost enclosure: node-wise max re-minimizes above tolerance");
        return EnclosingSurface::from_rings(ctx, res.R);
    }
    EnclosingSurface M(ctx.grid, rmax, ctx.r0());
    if (surface_area(ctx, u, M).total > amin * (1 + area_tol_rel))
        throw std::runtime_error("ambiguous outermost enclosure");
    return M;
}

double mean_curvature_conformal(const Context& ctx, const HarmonicFunction& u,
                                const EnclosingSurface& S, std::size_t node) {
    const AngularGrid& g = *ctx.grid;
    const int n = ctx.n();
    const double r0 = ctx.r0();
    const double cpow = -2.0 / (n - 2);
    const double npow = -double(n) / (n - 2);
    const double coef = 2.0 * double(n - 1) / (n - 2);

    if (S.on_sigma(node)) {
        // Interior-of-contact nodes carry Sigma's own curvature; a node on the
        // snap boundary (an off-Sigma neighbor) has no classical curvature.
        const std::size_t nr = g.ring_count(), na = g.azimuth_count();
        const std::size_t ring = g.ring_of(node), az = node % na;
        auto off = [&](std::size_t nd) { return !S.on_sigma(nd); };
        bool boundary = false;
        if (ring > 0 && off(g.node_of(ring - 1, az))) boundary = true;
        if (ring + 1 < nr && off(g.node_of(ring + 1, az))) boundary = true;
        if (na >= 2) {
            if (off(g.node_of(ring, (az + 1) % na))) boundary = true;
            if (off(g.node_of(ring, (az + na - 1) % na))) boundary = true;
        }
        if (boundary)
            throw std::domain_error("mean curvature undefined at snap-boundary node " +
                                    std::to_string(node));
        const double H = ctx.base.sphere_mean_curvature(r0);
        const double uv = u.boundary_data()[node];
        const double dnu = u.radial_derivative(r0, node);
        return std::pow(uv, cpow) * H + coef * std::pow(uv, npow) * dnu;
    }

    const auto& R = S.radii();
    if (S.is_sphere(1e-10)) {
        const double r = R[node];
        const double H = ctx.base.sphere_mean_curvature(r);
        const double uv = u.eval(r, node);
        const double dnu = u.radial_derivative(r, node);
        return std::pow(uv, cpow) * H + coef * std::pow(uv, npow) * dnu;
    }

    // Discrete first variation of the base area: H = (dA/dR_j) / (w elem cos).
    const double delta = 1e-5 * r0;
    std::vector<double> Rp(R), Rm(R);
    Rp[node] += delta;
    Rm[node] = std::max(r0, Rm[node] - delta);
    const double dA = (base_graph_area(ctx, Rp) - base_graph_area(ctx, Rm)) /
                      (Rp[node] - Rm[node]);
    const double g2 = node_grad2(g, R)[node];
    auto grads = node_gradients(g, R);
    const double sin_th = std::sin(g.node_theta(node));
    const double rho = ctx.base.rho(R[node]);
    const double elem = std::pow(rho, n - 2) * std::sqrt(rho * rho + g2);
    const double cosn = rho / std::sqrt(rho * rho + g2);
    const double H = dA / (g.node_weight(node) * elem * cosn);

    // d_nu u on the graph: (u_r - rho^{-2} <grad_theta u, grad_theta R>) /
    // sqrt(1 + |grad R|^2 / rho^2).
    const double ur = u.radial_derivative(R[node], node);
    const double uth = u.theta_derivative(R[node], node);
    const double uph = u.phi_derivative(R[node], node);
    const double gphi = sin_th > 0.0 ? grads[node].dph / sin_th : 0.0;
    const double uphs = sin_th > 0.0 ? uph / sin_th : 0.0;
    const double inner = uth * grads[node].dth + uphs * gphi;
    const double dnu = (ur - inner / (rho * rho)) / std::sqrt(1.0 + g2 / (rho * rho));

    const double uv = u.eval(R[node], node);
    return std::pow(uv, cpow) * H + coef * std::pow(uv, npow) * dnu;
}

double schwarzschild_min_area_oracle(int n, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("area must be positive");
    const Constants c = constants(n);
    const double breakpoint = std::pow(2.0, c.p) * c.omega;
    if (A <= breakpoint) return A;
    const double x = std::pow(A / c.omega, 1.0 / c.p) - 1.0;
    return std::pow(x, double(n - 1) / (n - 2)) * breakpoint;
}

std::vector<double> ring_tangential_grad2(const AngularGrid& grid,
                                          std::span<const double> ring_radii) {
    const std::size_t nr = grid.ring_count();
    std::vector<double> th(nr), R(ring_radii.begin(), ring_radii.end()), out(nr);
    for (std::size_t i = 0; i < nr; ++i) th[i] = grid.ring_theta(i);
    for (std::size_t i = 0; i < nr; ++i) out[i] = onesided_grad2(th, R, i);
    return out;
}

} // namespace hp
