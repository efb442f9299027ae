#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace hp {

// Warping factor rho(r) of a radial metric dr^2 + rho(r)^2 g_{S^{n-1}},
// together with its first two derivatives. The radial coordinate r is
// arclength from the boundary outward.
class RadialProfile {
public:
    virtual ~RadialProfile() = default;
    virtual double rho(double r) const = 0;
    virtual double drho(double r) const = 0;
    virtual double d2rho(double r) const = 0;
    virtual double r_min() const = 0;
    virtual double r_max() const = 0;
};

// rho(r) = r (flat metric in polar form).
class FlatProfile final : public RadialProfile {
public:
    FlatProfile(double r_min, double r_max) : rmin_(r_min), rmax_(r_max) {}
    double rho(double r) const override { return r; }
    double drho(double) const override { return 1.0; }
    double d2rho(double) const override { return 0.0; }
    double r_min() const override { return rmin_; }
    double r_max() const override { return rmax_; }

private:
    double rmin_, rmax_;
};

// Natural cubic spline through (r_i, rho_i) samples; this is the form the
// JSON geometry input arrives in.
class SplineProfile final : public RadialProfile {
public:
    SplineProfile(std::vector<double> r, std::vector<double> rho);
    double rho(double r) const override;
    double drho(double r) const override;
    double d2rho(double r) const override;
    double r_min() const override { return r_.front(); }
    double r_max() const override { return r_.back(); }

private:
    std::size_t interval(double r) const;
    std::vector<double> r_, y_, ypp_; // ypp_ = spline second derivatives
};

// Piecewise-quintic Hermite interpolation of (rho, rho', rho'') samples.
// Used for profiles that come from an analytic construction (conformal
// composites, Schwarzschild), where exact derivative samples are available
// and C^2 accuracy matters for the mode ODE and the curvature.
class HermiteProfile final : public RadialProfile {
public:
    HermiteProfile(std::vector<double> r, std::vector<double> rho,
                   std::vector<double> drho, std::vector<double> d2rho);
    double rho(double r) const override;
    double drho(double r) const override;
    double d2rho(double r) const override;
    double r_min() const override { return r_.front(); }
    double r_max() const override { return r_.back(); }

private:
    std::size_t interval(double r) const;
    std::vector<double> r_, y_, yp_, ypp_;
};

// Profile given by callables (all three must be supplied).
class CallableProfile final : public RadialProfile {
public:
    CallableProfile(std::function<double(double)> rho, std::function<double(double)> drho,
                    std::function<double(double)> d2rho, double r_min, double r_max)
        : f_(std::move(rho)), fp_(std::move(drho)), fpp_(std::move(d2rho)),
          rmin_(r_min), rmax_(r_max) {}
    double rho(double r) const override { return f_(r); }
    double drho(double r) const override { return fp_(r); }
    double d2rho(double r) const override { return fpp_(r); }
    double r_min() const override { return rmin_; }
    double r_max() const override { return rmax_; }

private:
    std::function<double(double)> f_, fp_, fpp_;
    double rmin_, rmax_;
};

// Wrap a bare rho(r) callable, filling the derivatives with Richardson-refined
// central differences (relative step ~1e-3, three refinement levels).
std::shared_ptr<const RadialProfile>
make_fd_profile(std::function<double(double)> rho, double r_min, double r_max);

} // namespace hp
