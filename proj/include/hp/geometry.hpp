#pragma once

#include "hp/constants.hpp"
#include "hp/radial_profile.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace hp {

enum class GeometryKind { FlatExterior, WarpedProduct };

// Background manifold (M, g): the exterior {r >= r0} of a sphere, with metric
// dr^2 + rho(r)^2 g_{S^{n-1}}. FlatExterior is rho(r) = r. Immutable.
class BaseGeometry {
public:
    static BaseGeometry flat_exterior(int n, double r0, double r_max = 0.0);
    static BaseGeometry warped_from_samples(int n, double r0, const std::vector<double>& r,
                                            const std::vector<double>& rho);
    static BaseGeometry warped_from_profile(int n, double r0,
                                            std::shared_ptr<const RadialProfile> profile);

    GeometryKind kind() const { return kind_; }
    int n() const { return consts_.n; }
    double r0() const { return r0_; }
    double r_max() const { return profile_->r_max(); }
    const Constants& consts() const { return consts_; }

    double rho(double r) const { return profile_->rho(r); }
    double drho(double r) const { return profile_->drho(r); }
    double d2rho(double r) const { return profile_->d2rho(r); }

    // |Sigma|_g = omega rho(r0)^{n-1}.
    double boundary_area() const;
    // Mean curvature of the coordinate sphere {r = const}: (n-1) rho'/rho.
    double sphere_mean_curvature(double r) const;

    // Quasi-local mass of the sphere {r}: rho^{n-2}(1 - rho'^2)/2; its
    // r -> infinity limit is the ADM mass of the warped product.
    double mass_at(double r) const;
    // ADM mass: 0 for FlatExterior, extrapolated tail limit otherwise.
    double adm_mass() const { return adm_mass_; }

private:
    BaseGeometry(GeometryKind k, Constants c, double r0,
                 std::shared_ptr<const RadialProfile> p);

    GeometryKind kind_;
    Constants consts_;
    double r0_;
    std::shared_ptr<const RadialProfile> profile_;
    double adm_mass_ = 0.0;
};

// Scalar curvature of the warped metric at radius r:
// R = (n-1) [ (n-2)(1 - rho'^2)/rho^2 - 2 rho''/rho ].
double scalar_curvature_radial(const BaseGeometry& base, double r);

struct AFReport {
    double decay_exponent_estimate = 0.0;   // fitted metric decay; +inf when exactly flat
    double curvature_decay_exponent = 0.0;  // fitted |R| decay; +inf when scalar-flat
    std::vector<std::pair<double, double>> scalar_curvature_samples;
    bool pass = false;
};

// Fits decay exponents of |g - delta| (via |rho/r - 1|) and |R| on a sampled
// tail; pass iff p > (n-2)/2 and q > n within the fitting tolerance. Advisory.
AFReport check_asymptotic_flatness(const BaseGeometry& base);

// Warped-product form of the Schwarzschild metric of mass m (isotropic form
// (1 + m/(2 s^{n-2}))^{4/(n-2)} delta), boundary at isotropic radius s0.
// Default s0 places the boundary at the horizon (m/2)^{1/(n-2)}; scalar-flat
// by construction. Requires m > 0 or s0 above the negative-mass singularity.
BaseGeometry schwarzschild_profile_base(int n, double mass, double s0 = 0.0,
                                        double s_max_factor = 1e4, int samples = 8192);

} // namespace hp
