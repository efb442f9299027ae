#pragma once

#include "hp/geometry.hpp"
#include "hp/ode.hpp"
#include "hp/parallel.hpp"
#include "hp/sphere.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hp {

// Decaying solution u_l of the radial mode equation
//   u'' + (n-1)(rho'/rho) u' - l(l+n-2)/rho^2 u = 0,
// normalized to u_l(r0) = 1, with u_l ~ q_l rho^{-(n-2+l)} at infinity.
// Solved by backward integration from R_inf in the log variable t = ln r with
// the power law factored out; FlatExterior uses the closed form (r0/r)^{n-2+l}.
class ModeSolution {
public:
    ModeSolution() = default; // empty slot; filled by ModeTable::solve
    static ModeSolution solve(const BaseGeometry& base, int l);

    int l() const { return l_; }
    double decay_exponent() const { return m_; } // n-2+l
    double value(double r) const;
    double derivative(double r) const;
    double derivative_at_r0() const { return dr0_; }

    // q_l = lim rho^{n-2+l} u_l. For l = 0 this is the exact flux first
    // integral -rho(r0)^{n-1} u'(r0)/(n-2); higher modes use Richardson
    // extrapolation in 1/r near R_inf.
    double decay_coefficient() const { return q_; }
    // Richardson tail estimate (cross-check for l = 0).
    double decay_coefficient_richardson() const { return q_richardson_; }
    // -rho(r0)^{n-1} u'(r0) / (n-2); meaningful for l = 0.
    double flux_coefficient() const { return flux_; }

private:
    int l_ = 0;
    double m_ = 1.0, r0_ = 1.0, dr0_ = 0.0, q_ = 0.0, q_richardson_ = 0.0, flux_ = 0.0;
    bool flat_ = true;
    double norm_ = 1.0;
    std::shared_ptr<const DensePath> path_; // (v, v') in t = ln r, warped only
};

// Immutable table of mode solutions for l = 0..l_max; construction is
// parallel over l.
class ModeTable {
public:
    static std::shared_ptr<const ModeTable> solve(const BaseGeometry& base, int l_max,
                                                  par::Exec exec = par::Exec::parallel);
    const ModeSolution& mode(int l) const { return modes_.at(static_cast<std::size_t>(l)); }
    int l_max() const { return static_cast<int>(modes_.size()) - 1; }

private:
    std::vector<ModeSolution> modes_;
};

// Base geometry + angular grid + mode table, shared immutably by every
// operation downstream.
struct Context {
    BaseGeometry base;
    std::shared_ptr<const AngularGrid> grid;
    std::shared_ptr<const ModeTable> modes;

    Context(BaseGeometry b, AngularGrid g, par::Exec exec = par::Exec::parallel);

    int n() const { return base.n(); }
    const Constants& consts() const { return base.consts(); }
    double r0() const { return base.r0(); }
    // Area element of Sigma at a node (base metric).
    double sigma_element(std::size_t node) const {
        return sigma_scale_ * grid->node_weight(node);
    }
    double sigma_ring_element(std::size_t ring) const {
        return sigma_scale_ * grid->ring_weight(ring);
    }
    double sigma_area() const { return base.boundary_area(); }

private:
    double sigma_scale_ = 1.0; // rho(r0)^{n-1}
};

// Nonnegative boundary data f on Sigma, sampled at grid nodes; represents the
// generalized-class member u_f^k g through its conformal factor trace.
class BoundaryData {
public:
    BoundaryData(std::shared_ptr<const AngularGrid> grid, std::vector<double> values);

    static BoundaryData constant(const Context& ctx, double c);
    static BoundaryData from_rings(const Context& ctx, std::span<const double> ring_values);

    const AngularGrid& grid() const { return *grid_; }
    std::shared_ptr<const AngularGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t node) const { return values_[node]; }
    std::size_t size() const { return values_.size(); }

    // \int_Sigma f^p dA (base measure); the boundary area |Sigma|_{u^k g}.
    double lp_area(const Context& ctx) const;
    double lp_norm(const Context& ctx) const; // (\int f^p dA)^{1/p}
    double min_value() const;
    double max_value() const;

private:
    std::shared_ptr<const AngularGrid> grid_;
    std::vector<double> values_;
};

// g-harmonic function u with prescribed value at infinity and boundary data
// f: u = v_inf + sum_{l,m} c_{lm} u_l(r) Y_{lm}. Node-wise boundary equality
// at r = r0 is by the grid trace convention (evaluation at r0 returns f).
class HarmonicFunction {
public:
    HarmonicFunction(const Context& ctx, BoundaryData f, double value_at_infinity,
                     std::vector<double> coeffs);

    double value_at_infinity() const { return vinf_; }
    const BoundaryData& boundary_data() const { return f_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    const AngularGrid& grid() const { return *grid_; }
    const ModeTable& modes() const { return *modes_; }

    double eval(double r, std::size_t node) const;
    // Evaluation at an arbitrary direction (basis computed on the fly).
    double eval_at_angles(double r, double theta, double phi) const;
    std::vector<double> eval_nodes(double r) const;       // all nodes at radius r
    double radial_derivative(double r, std::size_t node) const;
    double theta_derivative(double r, std::size_t node) const;
    double phi_derivative(double r, std::size_t node) const;

    bool is_axisymmetric(double tol = 1e-12) const; // only m = 0 modes
    bool is_radial(double tol = 1e-12) const;       // only l = 0
    // l = 0 part evaluated without angular factors: v_inf + c00 Y00 u_0(r).
    double radial_part(double r) const;
    double radial_part_derivative(double r) const;
    // Axisymmetric ring evaluation (requires is_axisymmetric).
    double eval_ring(double r, std::size_t ring) const;
    double radial_derivative_ring(double r, std::size_t ring) const;
    double theta_derivative_ring(double r, std::size_t ring) const;

private:
    std::shared_ptr<const AngularGrid> grid_;
    std::shared_ptr<const ModeTable> modes_;
    double r0_;
    double vinf_;
    BoundaryData f_;
    std::vector<double> coeffs_;
};

// Harmonic extension of f with the given value at infinity (Poisson problem
// via mode projection). f >= 0 is required when value_at_infinity = 1.
HarmonicFunction harmonic_extension(const Context& ctx, const BoundaryData& f,
                                    double value_at_infinity);

// phi: harmonic, 0 on Sigma, 1 at infinity.
HarmonicFunction capacity_potential(const Context& ctx);

// Coefficient a in u = v_inf + a/|x|^{n-2} + O(|x|^{1-n}).
double expansion_coefficient(const HarmonicFunction& u);

// C_g(Sigma) = -a(phi) > 0.
double capacity(const Context& ctx);

// V = (1/((n-2) omega)) d_nu phi on Sigma, at grid nodes. Represents the map
// from boundary values of decaying harmonic functions to their expansion
// coefficient: \int_Sigma V w dA = a(w).
std::vector<double> boundary_density_V(const Context& ctx);

// Pointwise quotient phi/u, harmonic for the conformal metric u^k g.
class ConformalQuotient {
public:
    ConformalQuotient(const Context& ctx, HarmonicFunction phi, HarmonicFunction u);
    double eval(double r, std::size_t node) const; // quotient with positivity floor
    // Expansion coefficient of the quotient, from Richardson extrapolation of
    // the angular mean on a tail of radii. Independent of the capacity
    // transformation law it is used to test.
    double expansion_coefficient() const;
    double value_at_infinity() const;

private:
    const AngularGrid& grid() const { return num_.grid(); }
    double r_inf_;
    HarmonicFunction num_, den_;
};

ConformalQuotient conformal_quotient(const Context& ctx, const HarmonicFunction& phi,
                                     const HarmonicFunction& u);

// The warped-product geometry of u^k g for radial u in the generalized class
// (value 1 at infinity, u > 0). Produces an independently solvable base whose
// invariants can be recomputed from scratch.
BaseGeometry apply_radial_conformal(const Context& ctx, const HarmonicFunction& u);

} // namespace hp
