#include "hp/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hp {

namespace {

double r_infinity(const BaseGeometry& base) {
    return std::min(1e4 * base.r0(), base.r_max());
}

double neville_to_zero(std::vector<double> x, std::vector<double> y) {
    const std::size_t n = x.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = y[i] + (y[i] - y[i - 1]) * x[i] / (x[i - j] - x[i]);
            if (i == j) break;
        }
    return y[n - 1];
}

} // namespace

ModeSolution ModeSolution::solve(const BaseGeometry& base, int l) {
    if (l < 0) throw std::invalid_argument("mode degree l >= 0");
    const int n = base.n();
    ModeSolution ms;
    ms.l_ = l;
    ms.m_ = double(n - 2 + l);
    ms.r0_ = base.r0();

    if (base.kind() == GeometryKind::FlatExterior) {
        ms.flat_ = true;
        ms.dr0_ = -ms.m_ / ms.r0_;
        ms.q_ = std::pow(ms.r0_, ms.m_);
        ms.q_richardson_ = ms.q_;
        ms.flux_ = -std::pow(ms.r0_, n - 1) * ms.dr0_ / (n - 2);
        return ms;
    }

    ms.flat_ = false;
    const double R = r_infinity(base);
    const double t0 = std::log(base.r0()), t1 = std::log(R);
    const double m = ms.m_;
    const double lam = double(l) * (l + n - 2);

    // Backward seed. For l >= 1 any direction error dies backward (the other
    // branch grows like r^l); for l = 0 the other branch is the constant, so
    // the seed direction must match the decaying branch itself. The exact
    // first integral rho^{n-1} u' = const gives it:
    //   u(R) ~ tail of int rho^{1-n}, u'(R) = -rho(R)^{1-n}.
    std::array<double, 2> seed{1.0, 0.0};
    if (l == 0) {
        const double rhoR = base.rho(R);
        const double corr = (1.0 / base.drho(R) - 1.0) * std::pow(rhoR, n - 2);
        const double tail = std::pow(rhoR, 2 - n) / (n - 2) +
                            corr * std::pow(rhoR, 2 * (2 - n)) / (2 * n - 4);
        const double du = -std::pow(rhoR, 1 - n);
        // v = u e^{mt}, v' = e^{mt}(r u' + m u); scale so v(T) = 1.
        seed[0] = 1.0;
        seed[1] = (R * du + m * tail) / tail;
    }

    // Log substitution u = v e^{-mt}: v'' + B v' + C v = 0 with the power law
    // factored out; the decaying branch is stable backward in t.
    auto coeffs = [&base, n, m, lam](double t, double& B, double& C, double& dB, double& dC) {
        const double r = std::exp(t);
        const double rho = base.rho(r), dp = base.drho(r), dpp = base.d2rho(r);
        const double w = dp * r / rho; // = 1 in the flat case
        const double rr = r * r / (rho * rho);
        B = -(2.0 * m + 1.0) + (n - 1) * w;
        C = m * (m + 1.0) - (n - 1) * m * w - lam * rr;
        const double dw = dpp * r * r / rho + w * (1.0 - w); // dw/dt
        dB = (n - 1) * dw;
        dC = -(n - 1) * m * dw - lam * 2.0 * rr * (1.0 - w);
    };
    OdeRhs rhs = [coeffs](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        double B, C, dB, dC;
        coeffs(t, B, C, dB, dC);
        dy[0] = y[1];
        dy[1] = -B * y[1] - C * y[0];
    };

    OdeOptions opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-14;
    opt.max_step = 0.08;
    auto path = std::make_shared<DensePath>(rk45_integrate(rhs, t1, t0, seed, opt));

    // Quintic dense output: the ODE supplies v'' and (differentiated) v'''.
    {
        std::vector<std::array<double, 2>> curv(path->size());
        for (std::size_t k = 0; k < path->size(); ++k) {
            double B, C, dB, dC;
            coeffs(path->times()[k], B, C, dB, dC);
            const double v = path->value_at(k)[0], vd = path->value_at(k)[1];
            const double vdd = -B * vd - C * v;
            curv[k] = {vdd, -(dB * vd + B * vdd) - (dC * v + C * vd)};
        }
        path->attach_curvature(std::move(curv));
    }

    // Normalize u(r0) = 1.
    auto at0 = path->eval(t0);
    const double u_r0 = at0[0] * std::exp(-m * t0);
    if (!(u_r0 > 0.0)) throw std::runtime_error("mode solution lost positivity at the boundary");
    ms.norm_ = 1.0 / u_r0;
    ms.path_ = path;
    ms.dr0_ = ms.norm_ * std::exp(-m * t0) * (at0[1] - m * at0[0]) / base.r0();

    // Richardson in 1/r of rho^{n-2+l} u near R_inf.
    std::vector<double> xs, ys;
    for (int j = 0; j < 6; ++j) {
        double r = R / std::pow(2.0, j);
        xs.push_back(1.0 / r);
        ys.push_back(std::pow(base.rho(r), m) * ms.value(r));
    }
    ms.q_richardson_ = neville_to_zero(xs, ys);
    ms.flux_ = -std::pow(base.rho(base.r0()), n - 1) * ms.dr0_ / (n - 2);
    // l = 0: the flux first integral is exact and free of the arclength
    // chart's log-contaminated tail; the Richardson value stays available as
    // the cross-check. Higher modes keep the Richardson estimate.
    ms.q_ = l == 0 ? ms.flux_ : ms.q_richardson_;
    return ms;
}

double ModeSolution::value(double r) const {
    if (flat_) return std::pow(r0_ / r, m_);
    const double t = std::log(r);
    if (t > path_->t_back()) return q_ / std::pow(r, m_); // beyond R_inf: leading asymptote
    auto y = path_->eval(t);
    return norm_ * y[0] * std::exp(-m_ * t);
}

double ModeSolution::derivative(double r) const {
    if (flat_) return -m_ / r * std::pow(r0_ / r, m_);
    const double t = std::log(r);
    if (t > path_->t_back()) return -m_ / r * value(r);
    auto y = path_->eval(t);
    return norm_ * std::exp(-m_ * t) * (y[1] - m_ * y[0]) / r;
}

std::shared_ptr<const ModeTable> ModeTable::solve(const BaseGeometry& base, int l_max,
                                                  par::Exec exec) {
    auto table = std::make_shared<ModeTable>();
    table->modes_.resize(static_cast<std::size_t>(l_max) + 1);
    par::for_each_index(static_cast<std::size_t>(l_max) + 1, exec, [&](std::size_t l) {
        table->modes_[l] = ModeSolution::solve(base, static_cast<int>(l));
    });
    return table;
}

Context::Context(BaseGeometry b, AngularGrid g, par::Exec exec)
    : base(std::move(b)), grid(std::make_shared<AngularGrid>(std::move(g))) {
    if (grid->dim() != base.n()) throw std::invalid_argument("grid/base dimension mismatch");
    modes = ModeTable::solve(base, grid->l_max(), exec);
    sigma_scale_ = std::pow(base.rho(base.r0()), base.n() - 1);
}

BoundaryData::BoundaryData(std::shared_ptr<const AngularGrid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_ || values_.size() != grid_->node_count())
        throw std::invalid_argument("boundary data / grid size mismatch");
}

BoundaryData BoundaryData::constant(const Context& ctx, double c) {
    return BoundaryData(ctx.grid, std::vector<double>(ctx.grid->node_count(), c));
}

BoundaryData BoundaryData::from_rings(const Context& ctx, std::span<const double> rv) {
    return BoundaryData(ctx.grid, ctx.grid->expand_rings(rv));
}

double BoundaryData::lp_area(const Context& ctx) const {
    const double p = ctx.consts().p;
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        s += std::pow(std::abs(values_[i]), p) * ctx.sigma_element(i);
    return s;
}

double BoundaryData::lp_norm(const Context& ctx) const {
    return std::pow(lp_area(ctx), 1.0 / ctx.consts().p);
}

double BoundaryData::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double BoundaryData::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

HarmonicFunction::HarmonicFunction(const Context& ctx, BoundaryData f, double value_at_infinity,
                                   std::vector<double> coeffs)
    : grid_(ctx.grid), modes_(ctx.modes), r0_(ctx.r0()), vinf_(value_at_infinity),
      f_(std::move(f)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_->mode_count())
        throw std::invalid_argument("coefficient / mode basis mismatch");
}

double HarmonicFunction::eval(double r, std::size_t node) const {
    if (r < r0_ * (1 - 1e-12)) throw std::out_of_range("evaluation below the boundary radius");
    if (r <= r0_ * (1 + 1e-14)) return f_[node]; // trace convention at Sigma
    double s = vinf_;
    const std::size_t nn = grid_->node_count();
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double ul = modes_->mode(l).value(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi)
            s += coeffs_[mi] * ul * grid_->y(mi, node);
    }
    (void)nn;
    return s;
}

double HarmonicFunction::eval_at_angles(double r, double theta, double phi) const {
    if (r < r0_ * (1 - 1e-12)) throw std::out_of_range("evaluation below the boundary radius");
    std::vector<double> basis;
    if (grid_->mode_count() == 1) basis.assign(1, 1.0 / std::sqrt(grid_->omega()));
    else evaluate_real_harmonics(grid_->l_max(), theta, phi, basis);
    double s = vinf_;
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double ul = modes_->mode(l).value(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi) s += coeffs_[mi] * ul * basis[mi];
    }
    return s;
}

std::vector<double> HarmonicFunction::eval_nodes(double r) const {
    const std::size_t nn = grid_->node_count();
    if (r <= r0_ * (1 + 1e-14)) return f_.values();
    std::vector<double> out(nn, vinf_);
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double ul = modes_->mode(l).value(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi) {
            const double cu = coeffs_[mi] * ul;
            if (cu == 0.0) continue;
            for (std::size_t node = 0; node < nn; ++node) out[node] += cu * grid_->y(mi, node);
        }
    }
    return out;
}

double HarmonicFunction::radial_derivative(double r, std::size_t node) const {
    double s = 0.0;
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double dul = modes_->mode(l).derivative(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi)
            s += coeffs_[mi] * dul * grid_->y(mi, node);
    }
    return s;
}

double HarmonicFunction::theta_derivative(double r, std::size_t node) const {
    double s = 0.0;
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double ul = modes_->mode(l).value(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi)
            s += coeffs_[mi] * ul * grid_->dy_dtheta(mi, node);
    }
    return s;
}

double HarmonicFunction::phi_derivative(double r, std::size_t node) const {
    double s = 0.0;
    std::size_t mi = 0;
    for (int l = 0; l <= grid_->l_max() && mi < coeffs_.size(); ++l) {
        const double ul = modes_->mode(l).value(r);
        const std::size_t mcount = grid_->mode_count() == 1 ? 1 : static_cast<std::size_t>(2 * l + 1);
        for (std::size_t k = 0; k < mcount; ++k, ++mi) {
            if (grid_->mode(mi).m == 0) continue;
            s += coeffs_[mi] * ul * grid_->dy_dphi(mi, node);
        }
    }
    return s;
}

bool HarmonicFunction::is_axisymmetric(double tol) const {
    double scale = std::abs(vinf_);
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    for (std::size_t mi = 0; mi < coeffs_.size(); ++mi)
        if (grid_->mode(mi).m != 0 && std::abs(coeffs_[mi]) > tol * std::max(scale, 1.0))
            return false;
    return true;
}

bool HarmonicFunction::is_radial(double tol) const {
    double scale = std::abs(vinf_);
    for (double c : coeffs_) scale = std::max(scale, std::abs(c));
    for (std::size_t mi = 0; mi < coeffs_.size(); ++mi)
        if (grid_->mode(mi).l != 0 && std::abs(coeffs_[mi]) > tol * std::max(scale, 1.0))
            return false;
    return true;
}

double HarmonicFunction::radial_part(double r) const {
    const double y00 = 1.0 / std::sqrt(grid_->omega());
    return vinf_ + coeffs_[0] * modes_->mode(0).value(r) * y00;
}

double HarmonicFunction::radial_part_derivative(double r) const {
    const double y00 = 1.0 / std::sqrt(grid_->omega());
    return coeffs_[0] * modes_->mode(0).derivative(r) * y00;
}

double HarmonicFunction::eval_ring(double r, std::size_t ring) const {
    if (r <= r0_ * (1 + 1e-14)) return f_[grid_->node_of(ring, 0)];
    double s = vinf_;
    for (int l = 0; l <= grid_->l_max(); ++l) {
        const double c = coeffs_[grid_->mode_index(l, 0)];
        if (c == 0.0) continue;
        s += c * modes_->mode(l).value(r) * grid_->y_ring(l, ring);
    }
    return s;
}

double HarmonicFunction::radial_derivative_ring(double r, std::size_t ring) const {
    double s = 0.0;
    for (int l = 0; l <= grid_->l_max(); ++l) {
        const double c = coeffs_[grid_->mode_index(l, 0)];
        if (c == 0.0) continue;
        s += c * modes_->mode(l).derivative(r) * grid_->y_ring(l, ring);
    }
    return s;
}

double HarmonicFunction::theta_derivative_ring(double r, std::size_t ring) const {
    double s = 0.0;
    for (int l = 0; l <= grid_->l_max(); ++l) {
        const double c = coeffs_[grid_->mode_index(l, 0)];
        if (c == 0.0) continue;
        s += c * modes_->mode(l).value(r) * grid_->dy_dtheta_ring(l, ring);
    }
    return s;
}

HarmonicFunction harmonic_extension(const Context& ctx, const BoundaryData& f,
                                    double value_at_infinity) {
    if (f.grid_ptr().get() != ctx.grid.get())
        throw std::invalid_argument("grid/basis mismatch between context and boundary data");
    if (value_at_infinity == 1.0 && f.min_value() < 0.0)
        throw std::invalid_argument("generalized-class data must be nonnegative");
    std::vector<double> diff(f.values());
    for (double& v : diff) v -= value_at_infinity;
    std::vector<double> coeffs = ctx.grid->project(diff);
    return HarmonicFunction(ctx, f, value_at_infinity, std::move(coeffs));
}

HarmonicFunction capacity_potential(const Context& ctx) {
    return harmonic_extension(ctx, BoundaryData::constant(ctx, 0.0), 1.0);
}

double expansion_coefficient(const HarmonicFunction& u) {
    // Only the l = 0 term survives at order |x|^{-(n-2)}:
    // a = c00 Y00 q0 with q0 = lim rho^{n-2} u_0.
    const double y00 = 1.0 / std::sqrt(u.grid().omega());
    return u.coefficients()[0] * y00 * u.modes().mode(0).decay_coefficient();
}

double capacity(const Context& ctx) {
    return -expansion_coefficient(capacity_potential(ctx));
}

std::vector<double> boundary_density_V(const Context& ctx) {
    HarmonicFunction phi = capacity_potential(ctx);
    const int n = ctx.n();
    const double omega = ctx.consts().omega;
    std::vector<double> v(ctx.grid->node_count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = phi.radial_derivative(ctx.r0(), i) / ((n - 2) * omega);
    return v;
}

ConformalQuotient::ConformalQuotient(const Context& ctx, HarmonicFunction phi, HarmonicFunction u)
    : r_inf_(r_infinity(ctx.base)), num_(std::move(phi)), den_(std::move(u)) {
    if (den_.value_at_infinity() != 1.0)
        throw std::invalid_argument("conformal factor must approach 1 at infinity");
}

double ConformalQuotient::eval(double r, std::size_t node) const {
    const double den = den_.eval(r, node);
    const double floor = 1e-12;
    if (den < floor)
        throw std::domain_error("conformal quotient: denominator below positivity floor");
    return num_.eval(r, node) / den;
}

double ConformalQuotient::value_at_infinity() const { return num_.value_at_infinity(); }

double ConformalQuotient::expansion_coefficient() const {
    const auto& g = num_.grid();
    std::vector<double> xs, ys;
    for (int j = 0; j < 6; ++j) {
        const double r = r_inf_ / std::pow(2.0, j);
        double mean = 0.0;
        for (std::size_t node = 0; node < g.node_count(); ++node)
            mean += g.node_weight(node) * eval(r, node);
        mean /= g.omega();
        xs.push_back(1.0 / r);
        // rho ~ r at this order; r^{n-2}(q - q_inf) -> a
        ys.push_back(std::pow(r, num_.grid().dim() - 2) * (mean - value_at_infinity()));
    }
    // Neville in 1/r
    return neville_to_zero(xs, ys);
}

ConformalQuotient conformal_quotient(const Context& ctx, const HarmonicFunction& phi,
                                     const HarmonicFunction& u) {
    return ConformalQuotient(ctx, phi, u);
}

BaseGeometry apply_radial_conformal(const Context& ctx, const HarmonicFunction& u) {
    if (!u.is_radial(1e-11))
        throw std::invalid_argument("conformal composite requires radial u");
    if (u.value_at_infinity() != 1.0)
        throw std::invalid_argument("conformal factor must approach 1 at infinity");
    const int n = ctx.n();
    const double k2 = 2.0 / (n - 2); // u^{k/2} = u^{2/(n-2)}
    const double r0 = ctx.r0();
    const double R = r_infinity(ctx.base);
    const int N = 8192;

    static const double gx[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                 0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
    static const double gw[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                 0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};

    auto uval = [&](double s) { return u.radial_part(s); };
    auto uder = [&](double s) { return u.radial_part_derivative(s); };

    std::vector<double> arc(N), rho(N), drho(N), d2rho(N);
    double acc = r0, sprev = r0;
    for (int i = 0; i < N; ++i) {
        const double s = r0 * std::pow(R / r0, double(i) / (N - 1));
        if (i > 0) {
            const double mid = 0.5 * (sprev + s), half = 0.5 * (s - sprev);
            double q = 0.0;
            for (int j = 0; j < 7; ++j) {
                const double sj = mid + half * gx[j];
                q += gw[j] * std::pow(uval(sj), k2);
            }
            acc += q * half;
            sprev = s;
        }
        const double us = uval(s), ups = uder(s);
        if (!(us > 0.0)) throw std::domain_error("conformal factor not positive on the exterior");
        const double rr = ctx.base.rho(s), rp = ctx.base.drho(s), rpp = ctx.base.d2rho(s);
        const double upp = -(n - 1) * (rp / rr) * ups; // l = 0 mode equation
        arc[i] = acc;
        rho[i] = std::pow(us, k2) * rr;
        drho[i] = k2 * (ups / us) * rr + rp;
        const double d_ds = k2 * ((upp * us - ups * ups) / (us * us)) * rr +
                            k2 * (ups / us) * rp + rpp;
        d2rho[i] = d_ds / std::pow(us, k2);
    }

    auto prof = std::make_shared<HermiteProfile>(std::move(arc), std::move(rho), std::move(drho),
                                                 std::move(d2rho));
    return BaseGeometry::warped_from_profile(n, r0, prof);
}

} // namespace hp
