#include "hp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hp {

DensePath::DensePath(std::vector<double> t, std::vector<std::array<double, 2>> y,
                     std::vector<std::array<double, 2>> f)
    : t_(std::move(t)), y_(std::move(y)), f_(std::move(f)) {
    if (t_.size() < 2 || y_.size() != t_.size() || f_.size() != t_.size())
        throw std::invalid_argument("dense path needs >= 2 consistent nodes");
}

std::array<double, 2> DensePath::eval(double t) const {
    const double span = t_.back() - t_.front();
    if (t < t_.front() - 1e-9 * span || t > t_.back() + 1e-9 * span)
        throw std::out_of_range("dense path evaluated outside integration range");
    t = std::clamp(t, t_.front(), t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    if (i + 1 >= t_.size()) i = t_.size() - 2;
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    std::array<double, 2> out{};
    if (g_.empty()) {
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        for (int c = 0; c < 2; ++c)
            out[c] = h00 * y_[i][c] + h * h10 * f_[i][c] + h01 * y_[i + 1][c] +
                     h * h11 * f_[i + 1][c];
        return out;
    }
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double b0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double b1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double b2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double b3 = 10 * s3 - 15 * s4 + 6 * s5;
    const double b4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double b5 = 0.5 * (s3 - 2 * s4 + s5);
    for (int c = 0; c < 2; ++c)
        out[c] = b0 * y_[i][c] + h * b1 * f_[i][c] + h * h * b2 * g_[i][c] + b3 * y_[i + 1][c] +
                 h * b4 * f_[i + 1][c] + h * h * b5 * g_[i + 1][c];
    return out;
}

void DensePath::attach_curvature(std::vector<std::array<double, 2>> g) {
    if (g.size() != t_.size()) throw std::invalid_argument("curvature node count mismatch");
    g_ = std::move(g);
}

void DensePath::scale(double s) {
    for (auto& y : y_) { y[0] *= s; y[1] *= s; }
    for (auto& f : f_) { f[0] *= s; f[1] *= s; }
    for (auto& g : g_) { g[0] *= s; g[1] *= s; }
}

namespace {
// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace

DensePath rk45_integrate(const OdeRhs& rhs, double t0, double t1,
                         const std::array<double, 2>& y0, const OdeOptions& opt) {
    if (t0 == t1) throw std::invalid_argument("empty integration interval");
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double total = std::abs(t1 - t0);

    std::vector<double> ts;
    std::vector<std::array<double, 2>> ys, fs;

    double t = t0;
    std::array<double, 2> y = y0, f0{};
    rhs(t, y, f0);
    ts.push_back(t); ys.push_back(y); fs.push_back(f0);

    double h = dir * std::min(opt.max_step, total / 16.0);

    auto stage = [&](double tt, const std::array<double, 2>& yy, std::array<double, 2>& k) {
        rhs(tt, yy, k);
    };

    std::size_t nsteps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++nsteps > opt.max_steps)
            throw std::runtime_error("ODE integration failure: step budget exhausted");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        std::array<double, 2> k1 = fs.back(), k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
        std::array<double, 2> yt{};

        for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * a21 * k1[c];
        stage(t + c2 * h, yt, k2);
        for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * (a31 * k1[c] + a32 * k2[c]);
        stage(t + c3 * h, yt, k3);
        for (int c = 0; c < 2; ++c) yt[c] = y[c] + h * (a41 * k1[c] + a42 * k2[c] + a43 * k3[c]);
        stage(t + c4 * h, yt, k4);
        for (int c = 0; c < 2; ++c)
            yt[c] = y[c] + h * (a51 * k1[c] + a52 * k2[c] + a53 * k3[c] + a54 * k4[c]);
        stage(t + c5 * h, yt, k5);
        for (int c = 0; c < 2; ++c)
            yt[c] = y[c] + h * (a61 * k1[c] + a62 * k2[c] + a63 * k3[c] + a64 * k4[c] + a65 * k5[c]);
        stage(t + h, yt, k6);

        std::array<double, 2> ynew{};
        for (int c = 0; c < 2; ++c)
            ynew[c] = y[c] + h * (b1 * k1[c] + b3 * k3[c] + b4 * k4[c] + b5 * k5[c] + b6 * k6[c]);
        stage(t + h, ynew, k7);

        double err = 0.0;
        for (int c = 0; c < 2; ++c) {
            double e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] +
                            e7 * k7[c]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(y[c]), std::abs(ynew[c]));
            err = std::max(err, std::abs(e) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = ynew;
            ts.push_back(t); ys.push_back(y); fs.push_back(k7);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
        if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
            throw std::runtime_error("ODE integration failure: step underflow");
    }

    if (dir < 0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(ys.begin(), ys.end());
        std::reverse(fs.begin(), fs.end());
    }
    return DensePath(std::move(ts), std::move(ys), std::move(fs));
}

} // namespace hp
