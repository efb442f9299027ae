#include "hp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hp {

namespace {

// Neville extrapolation of samples (x_j, y_j) to x = 0.
double neville_to_zero(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = y[i] + (y[i] - y[i - 1]) * x[i] / (x[i - j] - x[i]);
            if (i == j) break;
        }
    return y[n - 1];
}

// Least squares slope of log|y| vs log x over positive samples; returns the
// decay exponent (-slope). Samples below `floor` are treated as exact zero
// and yield +inf.
double fit_decay_exponent(const std::vector<double>& x, const std::vector<double>& y,
                          double floor) {
    double mx = 0.0;
    for (double v : y) mx = std::max(mx, std::abs(v));
    if (mx < floor) return std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double av = std::abs(y[i]);
        if (av < floor) continue;
        double lx = std::log(x[i]), ly = std::log(av);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    if (m < 3) return std::numeric_limits<double>::infinity();
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return -slope;
}

} // namespace

BaseGeometry::BaseGeometry(GeometryKind k, Constants c, double r0,
                           std::shared_ptr<const RadialProfile> p)
    : kind_(k), consts_(c), r0_(r0), profile_(std::move(p)) {
    if (!(r0_ > 0.0)) throw std::invalid_argument("boundary radius r0 must be positive");
    if (profile_->r_min() > r0_ * (1 + 1e-12))
        throw std::invalid_argument("profile does not cover the boundary radius");
    if (kind_ == GeometryKind::FlatExterior) {
        adm_mass_ = 0.0;
        return;
    }
    // Tail limit of the quasi-local mass, extrapolated in 1/r. Start the
    // sample ladder where 1 - rho'^2 still carries significant bits: at the
    // far tail the deviation from flat drowns in rounding and Neville would
    // amplify that noise.
    double R = profile_->r_max();
    while (R > 64.0 * r0_) {
        const double dp = profile_->drho(R);
        if (std::abs(1.0 - dp * dp) >= 1e-5) break;
        R *= 0.5;
    }
    std::vector<double> xs, ys;
    for (int j = 0; j < 6; ++j) {
        double r = R / std::pow(2.0, j);
        xs.push_back(1.0 / r);
        ys.push_back(mass_at(r));
    }
    adm_mass_ = neville_to_zero(xs, ys);
}

BaseGeometry BaseGeometry::flat_exterior(int n, double r0, double r_max) {
    Constants c = constants(n);
    if (r_max <= 0.0) r_max = 1e4 * r0;
    return BaseGeometry(GeometryKind::FlatExterior, c, r0,
                        std::make_shared<FlatProfile>(r0, r_max));
}

BaseGeometry BaseGeometry::warped_from_samples(int n, double r0, const std::vector<double>& r,
                                               const std::vector<double>& rho) {
    Constants c = constants(n);
    return BaseGeometry(GeometryKind::WarpedProduct, c, r0,
                        std::make_shared<SplineProfile>(r, rho));
}

BaseGeometry BaseGeometry::warped_from_profile(int n, double r0,
                                               std::shared_ptr<const RadialProfile> profile) {
    Constants c = constants(n);
    return BaseGeometry(GeometryKind::WarpedProduct, c, r0, std::move(profile));
}

double BaseGeometry::boundary_area() const {
    return consts_.omega * std::pow(rho(r0_), consts_.n - 1);
}

double BaseGeometry::sphere_mean_curvature(double r) const {
    return (consts_.n - 1) * drho(r) / rho(r);
}

double BaseGeometry::mass_at(double r) const {
    double dp = drho(r);
    return 0.5 * std::pow(rho(r), consts_.n - 2) * (1.0 - dp * dp);
}

double scalar_curvature_radial(const BaseGeometry& base, double r) {
    if (r < base.r0() * (1 - 1e-12)) throw std::out_of_range("r below the boundary radius");
    if (base.kind() == GeometryKind::FlatExterior) return 0.0;
    const int n = base.n();
    const double rho = base.rho(r), dp = base.drho(r), dpp = base.d2rho(r);
    return (n - 1) * ((n - 2) * (1.0 - dp * dp) / (rho * rho) - 2.0 * dpp / rho);
}

AFReport check_asymptotic_flatness(const BaseGeometry& base) {
    AFReport rep;
    const int n = base.n();
    const double r0 = base.r0(), R = base.r_max();
    if (R < 16.0 * r0)
        throw std::invalid_argument("insufficient radial samples to fit decay exponents");

    // Sample the outer half (in log r) of the available range. The metric
    // deviation is measured in the areal chart |x| = rho, where
    // g = (1/rho'^2) d|x|^2 + |x|^2 g_S and |g - delta| = |1/rho'^2 - 1|;
    // the arclength chart would pick up spurious log factors.
    const int m = 24;
    std::vector<double> xs(m), dev(m), curv(m);
    const double lo = std::sqrt(r0 * R), hi = 0.98 * R;
    for (int i = 0; i < m; ++i) {
        double r = lo * std::pow(hi / lo, double(i) / (m - 1));
        const double dp = base.drho(r);
        xs[i] = base.rho(r);
        dev[i] = std::abs(1.0 / (dp * dp) - 1.0);
        curv[i] = scalar_curvature_radial(base, r);
        rep.scalar_curvature_samples.emplace_back(r, curv[i]);
    }
    rep.decay_exponent_estimate = fit_decay_exponent(xs, dev, 1e-13);
    // Scalar-flat detection is dimensionless: |R| r^2 below threshold is
    // indistinguishable from interpolation noise.
    double curv_scale = 0.0;
    for (int i = 0; i < m; ++i) curv_scale = std::max(curv_scale, std::abs(curv[i]) * xs[i] * xs[i]);
    rep.curvature_decay_exponent = curv_scale < 1e-6
                                       ? std::numeric_limits<double>::infinity()
                                       : fit_decay_exponent(xs, curv, 1e-18);

    const double fit_tol = 0.05;
    rep.pass = rep.decay_exponent_estimate > 0.5 * (n - 2) - fit_tol &&
               rep.curvature_decay_exponent > double(n) - fit_tol;
    return rep;
}

BaseGeometry schwarzschild_profile_base(int n, double mass, double s0, double s_max_factor,
                                        int samples) {
    Constants c = constants(n);
    const double horizon = mass > 0.0 ? std::pow(0.5 * mass, 1.0 / (n - 2)) : 0.0;
    if (s0 <= 0.0) {
        if (mass <= 0.0)
            throw std::invalid_argument("negative-mass profile needs an explicit boundary s0");
        s0 = horizon;
    }
    if (mass > 0.0 && s0 < horizon * (1 - 1e-12))
        throw std::invalid_argument("boundary must lie at or outside the horizon");
    if (mass < 0.0 && std::pow(s0, n - 2) <= 0.5 * std::abs(mass))
        throw std::invalid_argument("boundary inside the zero-area singularity");

    auto eps = [=](double s) { return 0.5 * mass / std::pow(s, n - 2); };
    auto conf = [=](double s) { return std::pow(1.0 + eps(s), 2.0 / (n - 2)); }; // dr/ds

    const double s_max = s_max_factor * std::max(s0, 1.0);
    const int N = samples;
    std::vector<double> arc(N), rho(N), drho(N), d2rho(N);

    // 7-point Gauss-Legendre for the cumulative arclength integral.
    static const double gx[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                 0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static const double gw[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                 0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};

    double acc = s0; // arclength coordinate starts at s0 on the boundary
    double sprev = s0;
    for (int i = 0; i < N; ++i) {
        double s = s0 * std::pow(s_max / s0, double(i) / (N - 1));
        if (i > 0) {
            double mid = 0.5 * (sprev + s), half = 0.5 * (s - sprev);
            double q = 0.0;
            for (int j = 0; j < 7; ++j) q += gw[j] * conf(mid + half * gx[j]);
            acc += q * half;
            sprev = s;
        }
        const double e = eps(s);
        arc[i] = acc;
        rho[i] = s * std::pow(1.0 + e, 2.0 / (n - 2));
        drho[i] = (1.0 - e) / (1.0 + e);
        // d(rho')/dr = [d(rho')/ds] / (dr/ds), with eps' = -(n-2) eps / s.
        d2rho[i] = 2.0 * (n - 2) * e /
                   (s * std::pow(1.0 + e, 2.0 + 2.0 / (n - 2)));
    }

    auto prof = std::make_shared<HermiteProfile>(std::move(arc), std::move(rho),
                                                 std::move(drho), std::move(d2rho));
    (void)c;
    return BaseGeometry::warped_from_profile(n, s0, prof);
}

} // namespace hp
