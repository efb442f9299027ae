#pragma once

#include "hp/harmonic.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hp {

// Coincidence set: R - r0 <= kSnapTolRel * r0 defines S cap Sigma.
inline constexpr double kSnapTolRel = 1e-9;
// Radial scan window [r0, kScanWindowFactor * r0]; area grows like r^{n-1}
// for class members, so minimizers are bounded.
inline constexpr double kScanWindowFactor = 1e3;
// Projected descent halts when the step size underflows this (times r0).
inline constexpr double kStepFloorRel = 1e-10;

// Radial-graph surface r = R(theta) over the sphere, R >= r0.
class EnclosingSurface {
public:
    EnclosingSurface(std::shared_ptr<const AngularGrid> grid, std::vector<double> radii,
                     double r0);
    static EnclosingSurface sphere(const Context& ctx, double r);
    static EnclosingSurface from_rings(const Context& ctx, std::span<const double> ring_radii);

    const AngularGrid& grid() const { return *grid_; }
    const std::vector<double>& radii() const { return radii_; }
    double radius(std::size_t node) const { return radii_[node]; }
    double r0() const { return r0_; }

    bool on_sigma(std::size_t node) const { return radii_[node] - r0_ <= kSnapTolRel * r0_; }
    std::vector<bool> coincidence_mask() const;
    bool is_sphere(double tol = 1e-10) const;
    bool entirely_on_sigma() const;
    std::vector<double> ring_radii() const; // ring averages

private:
    std::shared_ptr<const AngularGrid> grid_;
    std::vector<double> radii_;
    double r0_;
};

struct AreaBreakdown {
    double on_sigma = 0.0;  // \int_{S cap Sigma} f^p dH^{n-1}
    double off_sigma = 0.0; // \int_{S \ Sigma} u^p dH^{n-1}
    double total = 0.0;
};

// Area of S under u^k g, split per the coincidence mask. The off-Sigma area
// element of the graph r = R(theta) in the base metric is
// rho(R)^{n-2} sqrt(rho(R)^2 + |grad R|^2), with the tangential gradient from
// finite differences on the grid.
AreaBreakdown surface_area(const Context& ctx, const HarmonicFunction& u,
                           const EnclosingSurface& S);

struct MinAreaResult {
    double value = 0.0;
    EnclosingSurface surface;
    bool converged = true;
    std::string note;
};

// Exact minimal enclosing area among spheres for radial data: dense scan of
// A(r) = omega u(r)^p rho(r)^{n-1} plus local refinement; at r0 the contact
// boundary convention (f^p) applies. Outermost sphere wins ties.
MinAreaResult min_area_radial(const Context& ctx, const HarmonicFunction& u);

// Projected-descent minimization over ring radii R(theta) >= r0 (n = 3),
// multi-start from `init`, Sigma, a large sphere, the sphere-scan optimum,
// and seeded random profiles.
MinAreaResult min_area_graph(const Context& ctx, const HarmonicFunction& u,
                             const EnclosingSurface& init, int starts = 2,
                             std::uint64_t seed = 12345,
                             par::Exec exec = par::Exec::parallel);

// Combined inner solver used by the profile optimizer: sphere scan seed plus
// graph descents; returns the best result and every distinct surface whose
// area ties within `tie_rel`.
struct MinEnclosureResult {
    MinAreaResult best;
    std::vector<EnclosingSurface> ties;
};
MinEnclosureResult min_enclosure(const Context& ctx, const HarmonicFunction& u,
                                 const EnclosingSurface* warm_start = nullptr,
                                 double tie_rel = 1e-6);

// Node-wise maximum of near-minimal candidates, re-minimized once; throws
// std::runtime_error if the re-minimized area exceeds the minimum beyond
// tolerance (ambiguous outermost enclosure).
EnclosingSurface outermost_enclosure(const Context& ctx, const HarmonicFunction& u,
                                     const std::vector<EnclosingSurface>& candidates,
                                     double area_tol_rel = 1e-6);

// H-bar at a node of S under u^k g:
//   H-bar = u^{-2/(n-2)} H + (2(n-1)/(n-2)) u^{-n/(n-2)} d_nu u,
// with H the base mean curvature (closed form for spheres, discrete first
// variation otherwise). Throws std::domain_error at snap-boundary nodes.
double mean_curvature_conformal(const Context& ctx, const HarmonicFunction& u,
                                const EnclosingSurface& S, std::size_t node);

// Closed-form Schwarzschild minimal enclosing area:
// A for A <= 2^p omega, else ((A/omega)^{1/p} - 1)^{(n-1)/(n-2)} 2^p omega.
double schwarzschild_min_area_oracle(int n, double A);

// |dR/dtheta|^2 on ring samples by the same one-sided-mean stencil the area
// functional uses (consumers differentiating through the functional must
// match it).
std::vector<double> ring_tangential_grad2(const AngularGrid& grid,
                                          std::span<const double> ring_radii);

} // namespace hp
