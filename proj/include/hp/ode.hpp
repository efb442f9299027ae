#pragma once

#include <array>
#include <functional>
#include <vector>

namespace hp {

// Dense solution of a 2-component ODE system on a monotone node sequence,
// interpolated componentwise by cubic Hermite between accepted steps, or by
// quintic Hermite once per-node second derivatives are attached.
class DensePath {
public:
    DensePath(std::vector<double> t, std::vector<std::array<double, 2>> y,
              std::vector<std::array<double, 2>> f);

    // Componentwise Hermite evaluation; t clamped to [front, back] with a
    // small relative slack, out-of-range beyond that throws.
    std::array<double, 2> eval(double t) const;

    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }
    std::size_t size() const { return t_.size(); }
    const std::vector<double>& times() const { return t_; }
    const std::array<double, 2>& value_at(std::size_t i) const { return y_[i]; }
    const std::array<double, 2>& deriv_at(std::size_t i) const { return f_[i]; }

    // Second derivatives d^2 y / dt^2 at the nodes; upgrades eval to quintic.
    void attach_curvature(std::vector<std::array<double, 2>> g);

    // In-place linear rescale y -> s*y (and stored derivatives alike).
    void scale(double s);

private:
    std::vector<double> t_;
    std::vector<std::array<double, 2>> y_, f_, g_;
};

using OdeRhs = std::function<void(double t, const std::array<double, 2>& y,
                                  std::array<double, 2>& dy)>;

struct OdeOptions {
    double rtol = 1e-11;
    double atol = 1e-14;
    double max_step = 0.25;      // |h| cap, keeps the dense grid fine enough
    std::size_t max_steps = 2'000'000;
};

// Adaptive Dormand-Prince 5(4). Integrates from t0 to t1 (either direction)
// and returns the accepted nodes sorted by increasing t.
DensePath rk45_integrate(const OdeRhs& rhs, double t0, double t1,
                         const std::array<double, 2>& y0, const OdeOptions& opt = {});

} // namespace hp
