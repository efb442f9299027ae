#include "hp/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hp {

namespace {
std::size_t locate(const std::vector<double>& x, double v) {
    if (v < x.front() - 1e-9 * std::abs(x.front()) || v > x.back() * (1.0 + 1e-12) + 1e-300)
        throw std::out_of_range("radial coordinate outside sampled range");
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
}
} // namespace

SplineProfile::SplineProfile(std::vector<double> r, std::vector<double> rho)
    : r_(std::move(r)), y_(std::move(rho)) {
    const std::size_t n = r_.size();
    if (n < 4 || y_.size() != n) throw std::invalid_argument("spline profile needs >= 4 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (r_[i] <= r_[i - 1]) throw std::invalid_argument("spline abscissae must increase");
    for (double v : y_)
        if (!(v > 0.0)) throw std::invalid_argument("warping factor must be positive");

    // Natural spline: tridiagonal solve for second derivatives.
    ypp_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double sig = (r_[i] - r_[i - 1]) / (r_[i + 1] - r_[i - 1]);
        double pden = sig * ypp_[i - 1] + 2.0;
        ypp_[i] = (sig - 1.0) / pden;
        double rhs = (y_[i + 1] - y_[i]) / (r_[i + 1] - r_[i]) -
                     (y_[i] - y_[i - 1]) / (r_[i] - r_[i - 1]);
        u[i] = (6.0 * rhs / (r_[i + 1] - r_[i - 1]) - sig * u[i - 1]) / pden;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        ypp_[i] = ypp_[i] * ypp_[i + 1] + u[i];
}

std::size_t SplineProfile::interval(double r) const { return locate(r_, r); }

double SplineProfile::rho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    double a = (r_[i + 1] - r) / h, b = (r - r_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * ypp_[i] + (b * b * b - b) * ypp_[i + 1]) * h * h / 6.0;
}

double SplineProfile::drho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    double a = (r_[i + 1] - r) / h, b = (r - r_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * ypp_[i + 1] - (3.0 * a * a - 1.0) * ypp_[i]) * h / 6.0;
}

double SplineProfile::d2rho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    double a = (r_[i + 1] - r) / h, b = (r - r_[i]) / h;
    return a * ypp_[i] + b * ypp_[i + 1];
}

HermiteProfile::HermiteProfile(std::vector<double> r, std::vector<double> rho,
                               std::vector<double> drho, std::vector<double> d2rho)
    : r_(std::move(r)), y_(std::move(rho)), yp_(std::move(drho)), ypp_(std::move(d2rho)) {
    const std::size_t n = r_.size();
    if (n < 2 || y_.size() != n || yp_.size() != n || ypp_.size() != n)
        throw std::invalid_argument("hermite profile needs consistent samples");
    for (std::size_t i = 1; i < n; ++i)
        if (r_[i] <= r_[i - 1]) throw std::invalid_argument("hermite abscissae must increase");
}

std::size_t HermiteProfile::interval(double r) const { return locate(r_, r); }

namespace {
// Quintic Hermite basis on [0,1]; h1/h4 carry a factor h, h2/h5 a factor h^2.
struct Quintic {
    double s, h;
    double value(double y0, double p0, double q0, double y1, double p1, double q1) const {
        double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
        double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
        double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
        double h3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
        double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
        double h5 = 0.5 * (s3 - 2.0 * s4 + s5);
        return y0 * h0 + p0 * h * h1 + q0 * h * h * h2 + y1 * h3 + p1 * h * h4 + q1 * h * h * h5;
    }
    double d1(double y0, double p0, double q0, double y1, double p1, double q1) const {
        double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
        double h0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
        double h1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
        double h2 = s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4;
        double h3 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
        double h4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
        double h5 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);
        return (y0 * h0 + p0 * h * h1 + q0 * h * h * h2 + y1 * h3 + p1 * h * h4 +
                q1 * h * h * h5) / h;
    }
    double d2(double y0, double p0, double q0, double y1, double p1, double q1) const {
        double s2 = s * s, s3 = s2 * s;
        double h0 = -60.0 * s + 180.0 * s2 - 120.0 * s3;
        double h1 = -36.0 * s + 96.0 * s2 - 60.0 * s3;
        double h2 = 1.0 - 9.0 * s + 18.0 * s2 - 10.0 * s3;
        double h3 = 60.0 * s - 180.0 * s2 + 120.0 * s3;
        double h4 = -24.0 * s + 84.0 * s2 - 60.0 * s3;
        double h5 = 0.5 * (6.0 * s - 24.0 * s2 + 20.0 * s3);
        return (y0 * h0 + p0 * h * h1 + q0 * h * h * h2 + y1 * h3 + p1 * h * h4 +
                q1 * h * h * h5) / (h * h);
    }
};
} // namespace

double HermiteProfile::rho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    Quintic q{(r - r_[i]) / h, h};
    return q.value(y_[i], yp_[i], ypp_[i], y_[i + 1], yp_[i + 1], ypp_[i + 1]);
}

double HermiteProfile::drho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    Quintic q{(r - r_[i]) / h, h};
    return q.d1(y_[i], yp_[i], ypp_[i], y_[i + 1], yp_[i + 1], ypp_[i + 1]);
}

double HermiteProfile::d2rho(double r) const {
    std::size_t i = interval(r);
    double h = r_[i + 1] - r_[i];
    Quintic q{(r - r_[i]) / h, h};
    return q.d2(y_[i], yp_[i], ypp_[i], y_[i + 1], yp_[i + 1], ypp_[i + 1]);
}

std::shared_ptr<const RadialProfile>
make_fd_profile(std::function<double(double)> rho, double r_min, double r_max) {
    auto d1 = [rho](double r) {
        // Richardson on the 2nd-order central difference.
        double h = 1e-3 * std::max(std::abs(r), 1.0);
        auto cd = [&](double hh) { return (rho(r + hh) - rho(r - hh)) / (2.0 * hh); };
        double a = cd(h), b = cd(h / 2.0), c = cd(h / 4.0);
        double ab = (4.0 * b - a) / 3.0, bc = (4.0 * c - b) / 3.0;
        return (16.0 * bc - ab) / 15.0;
    };
    auto d2 = [rho](double r) {
        double h = 2e-3 * std::max(std::abs(r), 1.0);
        auto cd = [&](double hh) {
            return (rho(r + hh) - 2.0 * rho(r) + rho(r - hh)) / (hh * hh);
        };
        double a = cd(h), b = cd(h / 2.0), c = cd(h / 4.0);
        double ab = (4.0 * b - a) / 3.0, bc = (4.0 * c - b) / 3.0;
        return (16.0 * bc - ab) / 15.0;
    };
    return std::make_shared<CallableProfile>(rho, d1, d2, r_min, r_max);
}

} // namespace hp
