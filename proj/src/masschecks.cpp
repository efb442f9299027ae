#include "hp/masschecks.hpp"

#include "hp/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hp {

double penrose_rhs(int n, double area) {
    if (!(area > 0.0)) throw std::invalid_argument("area must be positive");
    const Constants c = constants(n);
    return 0.5 * std::pow(area / c.omega, double(n - 2) / (n - 1));
}

std::string scalar_curvature_note(const Context& ctx) {
    const double r0 = ctx.r0();
    const double R = std::min(1e3 * r0, ctx.base.r_max());
    double rmin = 0.0, at = r0;
    const int m = 64;
    for (int i = 0; i < m; ++i) {
        const double r = r0 * std::pow(R / r0, double(i) / (m - 1));
        const double s = scalar_curvature_radial(ctx.base, r);
        if (s < rmin) { rmin = s; at = r; }
    }
    std::ostringstream os;
    os.precision(3);
    if (rmin >= -1e-8)
        os << "conditional consequence check; nonnegative scalar curvature verified on ["
           << r0 << ", " << R << "] (min R = " << rmin << ")";
    else
        os << "conditional consequence check; scalar curvature NOT nonnegative on the sampled "
              "range (min R = " << rmin << " at r = " << at << "), hypotheses of the "
              "conjectured inequality fail";
    return os.str();
}

InequalityReport check_mu_alpha(const Context& ctx, double A, double alpha_value) {
    InequalityReport rep;
    rep.name = "mu_vs_alpha";
    rep.hypotheses_note = scalar_curvature_note(ctx);
    if (!(alpha_value < A * (1 - 1e-9))) {
        rep.applicable = false;
        rep.satisfied = false;
        rep.hypotheses_note += "; inapplicable: requires alpha(A) < A";
        return rep;
    }
    const InvariantSet inv = compute_invariants(ctx);
    rep.lhs = mu_formula(inv, ctx.n(), A);
    rep.rhs = penrose_rhs(ctx.n(), alpha_value);
    rep.margin = rep.lhs - rep.rhs;
    rep.satisfied = rep.margin >= -kInequalityTol;
    return rep;
}

InequalityReport check_I_sum(const Context& ctx) {
    InequalityReport rep;
    rep.name = "I1_plus_I2";
    const InvariantSet inv = compute_invariants(ctx);
    rep.lhs = inv.I1 + inv.I2;
    rep.rhs = 0.0;
    rep.margin = rep.lhs;
    rep.satisfied = rep.margin >= -kInequalityTol;
    rep.hypotheses_note = scalar_curvature_note(ctx);
    return rep;
}

ZasMassResult zas_mass(const Context& ctx) {
    const InvariantSet inv = compute_invariants(ctx);
    return {-inv.I2, inv.I1};
}

} // namespace hp
