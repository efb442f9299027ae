#pragma once

#include "hp/harmonic.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hp {

// Numerical invariants of the harmonic conformal class:
// I1 = m_ADM(g) - 2 C_g(Sigma),
// I2 = (2/(n-2)^2) ((1/omega) \int_Sigma (d_nu phi)^{2(n-1)/n} dA)^{n/(n-1)}.
struct InvariantSet {
    double I1 = 0.0;
    double I2 = 0.0;
    double capacity = 0.0;
    double adm_mass_base = 0.0;
};

InvariantSet compute_invariants(const Context& ctx);

// m_ADM(u^k g) = m_ADM(g) + 2a(u); requires value_at_infinity = 1.
double adm_mass(const Context& ctx, const HarmonicFunction& u);

double invariant_I1(const Context& ctx);
double invariant_I2(const Context& ctx);

// mu(A) = I1 + sqrt(2 I2) (A/omega)^{1/p}.
double mu_formula(const InvariantSet& inv, int n, double A);

// f0 = A^{1/p} (\int V^{2(n-1)/n} dA)^{-1/p} V^{(n-2)/n}; the unique maximizer
// boundary data, normalized so \int f0^p dA = A.
BoundaryData mu_maximizer_data(const Context& ctx, double A);

struct MuResult {
    double A = 0.0;
    double mu = 0.0;
    BoundaryData maximizer;
    enum class Method { formula, direct } method = Method::direct;
    bool converged = true;
};

// Direct constrained maximization of the ADM mass over {f >= 0,
// \int f^p dA = A} by projected ascent on the linear functional
// mass(f) = I1 + 2 \int V f dA. Multi-start detects implementation error
// only; the maximizer is unique.
MuResult mu_direct(const Context& ctx, double A, int starts = 3, std::uint64_t seed = 2024,
                   par::Exec exec = par::Exec::parallel);

// ADM masses of cap-concentrated data: for each half-angle eps, f is
// supported on the polar cap {theta <= eps} with \int f^p dA = A (grid
// semantics). The masses decrease toward I1 as eps -> 0 (mu-underbar = I1).
std::vector<std::pair<double, double>>
mu_lower_demo(const Context& ctx, double A, const std::vector<double>& cap_half_angles);

} // namespace hp
