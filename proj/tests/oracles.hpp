#pragma once

// Independent oracles for the test suites. Each one reaches a tested quantity
// by a different route than the implementation under test:
//  - scalar curvature by Richardson finite differences on rho alone,
//  - the l = 0 exterior problem by quadrature of the flux representation
//    u_0(r) = \int_r^inf rho^{1-n} / \int_{r0}^inf rho^{1-n},
//  - the minimal enclosing area by dense dynamic programming over
//    discretized axisymmetric radial profiles.

#include "hp/harmonic.hpp"

#include <functional>

namespace hp::oracle {

// R(r) of dr^2 + rho^2 g_{S^{n-1}} from finite differences of the callable.
double scalar_curvature_fd(const std::function<double(double)>& rho, int n, double r);

// \int_r^{r_max} rho^{1-n} plus a two-term asymptotic tail.
double flux_integral(const BaseGeometry& base, double r);

// Decaying l = 0 mode value, normalized to 1 at r0.
double mode0_value(const BaseGeometry& base, double r);

// Capacity via the quadrature route: 1 / ((n-2) I(r0)).
double capacity_quadrature(const BaseGeometry& base);

// Brute-force minimal enclosing area over discretized axisymmetric graphs
// (uniform theta grid with k_theta segments, m_radii geometric radius levels
// in [r0, r_hi]); dynamic programming over profiles.
double min_area_dp(const Context& ctx, const HarmonicFunction& u, int k_theta, int m_radii,
                   double r_hi);

} // namespace hp::oracle
