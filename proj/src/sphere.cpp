#include "hp/sphere.hpp"

#include "hp/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hp {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double pi = std::numbers::pi;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

namespace {

// Fully normalized associated Legendre values Pbar_l^m(mu) for fixed mu,
// normalized so that the real harmonics built from them are orthonormal on
// S^2: Y_{l,0} = Pbar_l^0, Y_{l,+-m} = sqrt(2) Pbar_l^m {cos,sin}(m phi).
// Also fills d(Pbar)/dmu. Index layout: idx = l*(l+1)/2 + m, m <= l.
void normalized_legendre(int l_max, double mu, std::vector<double>& p,
                         std::vector<double>& dp) {
    const std::size_t count = static_cast<std::size_t>((l_max + 1) * (l_max + 2) / 2);
    p.assign(count, 0.0);
    dp.assign(count, 0.0);
    auto idx = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
    const double pi = std::numbers::pi;
    const double sin_th = std::sqrt(std::max(0.0, 1.0 - mu * mu));

    p[idx(0, 0)] = std::sqrt(1.0 / (4.0 * pi));
    for (int m = 1; m <= l_max; ++m)
        p[idx(m, m)] = p[idx(m - 1, m - 1)] * sin_th * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int m = 0; m < l_max; ++m)
        p[idx(m + 1, m)] = mu * std::sqrt(2.0 * m + 3.0) * p[idx(m, m)];
    for (int m = 0; m <= l_max; ++m)
        for (int l = m + 2; l <= l_max; ++l) {
            double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            p[idx(l, m)] = a * (mu * p[idx(l - 1, m)] - b * p[idx(l - 2, m)]);
        }

    // (mu^2-1) dP/dmu = l mu P_l^m - c_l^m P_{l-1}^m with
    // c_l^m = sqrt((2l+1)(l^2-m^2)/(2l-1)); interior Gauss nodes keep
    // mu^2 != 1.
    const double den = mu * mu - 1.0;
    for (int m = 0; m <= l_max; ++m)
        for (int l = m; l <= l_max; ++l) {
            double num = l * mu * p[idx(l, m)];
            if (l > m) {
                double c = std::sqrt((2.0 * l + 1.0) * (double(l) * l - double(m) * m) /
                                     (2.0 * l - 1.0));
                num -= c * p[idx(l - 1, m)];
            }
            dp[idx(l, m)] = den != 0.0 ? num / den : 0.0;
        }
}

} // namespace

AngularGrid AngularGrid::build(int n, int l_max, int resolution) {
    if (l_max < 0) throw std::invalid_argument("l_max >= 0 required");
    if (resolution < 1) resolution = 1;
    Constants cs = constants(n);

    AngularGrid g;
    g.n_ = n;
    g.l_max_ = l_max;
    g.omega_ = cs.omega;

    const bool single = (n > 3) || (l_max == 0 && resolution == 1);
    if (single) {
        if (n > 3 && l_max > 0)
            throw std::invalid_argument("unsupported (n, l_max): only l_max = 0 for n > 3");
        g.n_polar_ = 1;
        g.n_az_ = 1;
        g.theta_ = {std::numbers::pi / 2.0};
        g.mu_ = {0.0};
        g.phi_ = {0.0};
        g.weight_ = {cs.omega};
        g.ring_weight_ = {cs.omega};
        g.modes_ = {{0, 0}};
        g.y_ = {1.0 / std::sqrt(cs.omega)};
        g.dy_ = {0.0};
        return g;
    }

    g.n_polar_ = std::max(l_max + 1, resolution);
    g.n_az_ = 2 * l_max + 1;

    std::vector<double> gx, gw;
    gauss_legendre(g.n_polar_, gx, gw);
    g.mu_.resize(g.n_polar_);
    g.theta_.resize(g.n_polar_);
    for (int i = 0; i < g.n_polar_; ++i) {
        // descending in theta keeps rings ordered from the north pole
        g.mu_[i] = gx[g.n_polar_ - 1 - i];
        g.theta_[i] = std::acos(g.mu_[i]);
    }
    const double pi = std::numbers::pi;
    g.phi_.resize(g.n_az_);
    for (int j = 0; j < g.n_az_; ++j) g.phi_[j] = 2.0 * pi * j / g.n_az_;

    const std::size_t nn = static_cast<std::size_t>(g.n_polar_) * g.n_az_;
    g.weight_.resize(nn);
    g.ring_weight_.resize(g.n_polar_);
    for (int i = 0; i < g.n_polar_; ++i) {
        double wring = gw[g.n_polar_ - 1 - i] * 2.0 * pi;
        g.ring_weight_[i] = wring;
        for (int j = 0; j < g.n_az_; ++j) g.weight_[g.node_of(i, j)] = wring / g.n_az_;
    }

    for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) g.modes_.push_back({l, m});

    g.y_.assign(g.modes_.size() * nn, 0.0);
    g.dy_.assign(g.modes_.size() * nn, 0.0);
    std::vector<double> pb, dpb;
    auto pidx = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
    for (int i = 0; i < g.n_polar_; ++i) {
        normalized_legendre(l_max, g.mu_[i], pb, dpb);
        const double dmu_dth = -std::sin(g.theta_[i]);
        for (std::size_t mi = 0; mi < g.modes_.size(); ++mi) {
            const int l = g.modes_[mi].l, m = g.modes_[mi].m;
            const int am = std::abs(m);
            const double base = pb[pidx(l, am)];
            const double dbase = dpb[pidx(l, am)] * dmu_dth;
            for (int j = 0; j < g.n_az_; ++j) {
                double az;
                if (m == 0) az = 1.0;
                else if (m > 0) az = std::numbers::sqrt2 * std::cos(m * g.phi_[j]);
                else az = std::numbers::sqrt2 * std::sin(am * g.phi_[j]);
                const std::size_t node = g.node_of(i, j);
                g.y_[mi * nn + node] = base * az;
                g.dy_[mi * nn + node] = dbase * az;
            }
        }
    }
    return g;
}

std::size_t AngularGrid::mode_index(int l, int m) const {
    if (modes_.size() == 1) {
        if (l == 0 && m == 0) return 0;
        throw std::out_of_range("mode (l,m) not in basis");
    }
    if (l < 0 || l > l_max_ || std::abs(m) > l) throw std::out_of_range("mode (l,m) not in basis");
    return static_cast<std::size_t>(l * l + (m + l));
}

double AngularGrid::dy_dphi(std::size_t mode, std::size_t node) const {
    const int l = modes_[mode].l, m = modes_[mode].m;
    if (m == 0) return 0.0;
    // d/dphi swaps the cos/sin pair: Y_{l,m}' = -m Y_{l,-m}, Y_{l,-m}' = m Y_{l,m}.
    if (m > 0) return -m * y(mode_index(l, -m), node);
    return std::abs(m) * y(mode_index(l, -m), node);
}

double AngularGrid::y_ring(int l, std::size_t ring) const {
    return y(mode_index(l, 0), node_of(ring, 0));
}

double AngularGrid::dy_dtheta_ring(int l, std::size_t ring) const {
    return dy_dtheta(mode_index(l, 0), node_of(ring, 0));
}

double AngularGrid::integrate(std::span<const double> v) const {
    if (v.size() != node_count()) throw std::invalid_argument("node sample size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weight_[i] * v[i];
    return s;
}

std::vector<double> AngularGrid::project(std::span<const double> v) const {
    if (v.size() != node_count()) throw std::invalid_argument("node sample size mismatch");
    std::vector<double> c(modes_.size(), 0.0);
    const std::size_t nn = node_count();
    for (std::size_t mi = 0; mi < modes_.size(); ++mi) {
        double s = 0.0;
        for (std::size_t i = 0; i < nn; ++i) s += weight_[i] * v[i] * y_[mi * nn + i];
        c[mi] = s;
    }
    return c;
}

std::vector<double> AngularGrid::expand_rings(std::span<const double> rv) const {
    if (rv.size() != ring_count()) throw std::invalid_argument("ring sample size mismatch");
    std::vector<double> out(node_count());
    for (std::size_t i = 0; i < node_count(); ++i) out[i] = rv[ring_of(i)];
    return out;
}

std::vector<double> AngularGrid::ring_average(std::span<const double> v) const {
    if (v.size() != node_count()) throw std::invalid_argument("node sample size mismatch");
    std::vector<double> out(ring_count(), 0.0);
    for (std::size_t i = 0; i < node_count(); ++i)
        out[ring_of(i)] += v[i] * weight_[i] / ring_weight_[ring_of(i)];
    return out;
}

AngularGrid sphere_quadrature(int n, int l_max, int resolution) {
    constants(n); // range check
    if (n > 3 && l_max != 0)
        throw std::invalid_argument("unsupported (n, l_max) combination: n=" + std::to_string(n) +
                                    " supports l_max = 0 only");
    return AngularGrid::build(n, l_max, resolution);
}

void evaluate_real_harmonics(int l_max, double theta, double phi, std::vector<double>& out) {
    std::vector<double> pb, dpb;
    normalized_legendre(l_max, std::cos(theta), pb, dpb);
    auto pidx = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };
    out.assign(static_cast<std::size_t>(l_max + 1) * (l_max + 1), 0.0);
    std::size_t k = 0;
    for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m, ++k) {
            const int am = std::abs(m);
            double az = 1.0;
            if (m > 0) az = std::numbers::sqrt2 * std::cos(m * phi);
            else if (m < 0) az = std::numbers::sqrt2 * std::sin(am * phi);
            out[k] = pb[pidx(l, am)] * az;
        }
}

} // namespace hp
