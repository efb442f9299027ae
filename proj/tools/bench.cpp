// Benchmark: OpenMP kernels against their serial reference paths.
// Reports wall time, speedup, and the maximum result deviation (expected 0:
// the parallel kernels are index maps with no reordered reductions).

#include "hp/invariants.hpp"
#include "hp/minarea.hpp"
#include "hp/profile.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

using clock_t_ = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn) {
    const auto t0 = clock_t_::now();
    fn();
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

void report(const char* name, double ts, double tp, double dev) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   max|diff| %.3g\n",
                name, ts, tp, ts / tp, dev);
}

} // namespace

int main() {
    const double pi = 3.14159265358979323846;
    std::printf("threads available: %d\n\n", hp::par::max_threads());

    // Mode table on a warped base: independent ODE solves per degree l.
    {
        hp::BaseGeometry base = hp::schwarzschild_profile_base(3, 2.0);
        std::shared_ptr<const hp::ModeTable> a, b;
        const int L = 24;
        double ts = time_of([&] { a = hp::ModeTable::solve(base, L, hp::par::Exec::serial); });
        double tp = time_of([&] { b = hp::ModeTable::solve(base, L, hp::par::Exec::parallel); });
        double dev = 0.0;
        for (int l = 0; l <= L; ++l)
            for (double r : {1.5, 4.0, 40.0, 400.0})
                dev = std::max(dev, std::abs(a->mode(l).value(r) - b->mode(l).value(r)));
        report("mode table (L=24, warped)", ts, tp, dev);
    }

    // Multi-start graph descent.
    {
        hp::BaseGeometry base = hp::BaseGeometry::flat_exterior(3, 1.0);
        hp::Context ctx(base, hp::sphere_quadrature(3, 10, 20));
        auto grid = ctx.grid;
        std::vector<double> f(grid->node_count());
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = 2.5 + 0.5 * std::cos(grid->node_theta(i));
        hp::HarmonicFunction u = hp::harmonic_extension(ctx, hp::BoundaryData(grid, f), 1.0);
        auto init = hp::EnclosingSurface::sphere(ctx, 2.0);
        hp::MinAreaResult rs{0, init, true, ""}, rp{0, init, true, ""};
        double ts = time_of(
            [&] { rs = hp::min_area_graph(ctx, u, init, 6, 99, hp::par::Exec::serial); });
        double tp = time_of(
            [&] { rp = hp::min_area_graph(ctx, u, init, 6, 99, hp::par::Exec::parallel); });
        report("graph descent (6 starts)", ts, tp, std::abs(rs.value - rp.value));
    }

    // Mass-profile maximization, multi-start.
    {
        hp::BaseGeometry base = hp::BaseGeometry::flat_exterior(3, 1.0);
        hp::Context ctx(base, hp::sphere_quadrature(3, 12, 24));
        double vs = 0, vp = 0;
        double ts = time_of([&] {
            vs = hp::mu_direct(ctx, 64 * pi, 8, 7, hp::par::Exec::serial).mu;
        });
        double tp = time_of([&] {
            vp = hp::mu_direct(ctx, 64 * pi, 8, 7, hp::par::Exec::parallel).mu;
        });
        report("mu_direct (8 starts)", ts, tp, std::abs(vs - vp));
    }

    // Area-profile ascent, multi-start.
    {
        hp::BaseGeometry base = hp::BaseGeometry::flat_exterior(3, 1.0);
        hp::Context ctx(base, hp::sphere_quadrature(3, 10, 16));
        double vs = 0, vp = 0;
        double ts = time_of([&] {
            vs = hp::alpha_C(ctx, 256 * pi, 4.0, 3, 11, hp::par::Exec::serial).value;
        });
        double tp = time_of([&] {
            vp = hp::alpha_C(ctx, 256 * pi, 4.0, 3, 11, hp::par::Exec::parallel).value;
        });
        report("alpha_C (multi-start)", ts, tp, std::abs(vs - vp));
    }

    return 0;
}
