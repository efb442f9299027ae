#pragma once

#include "hp/invariants.hpp"
#include "hp/minarea.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace hp {

// Exceedance of the radial oracle beyond this relative margin is emitted as a
// conjecture-counterexample record, never clamped.
inline constexpr double kExceedanceRel = 1e-2;

// The constraint set {0 <= f <= C, \int f^p dA = A} is empty when
// C^p |Sigma|_g < A.
class InfeasibleConstraint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AlphaResult {
    double A = 0.0;
    double C = 0.0;
    double value = 0.0; // alpha_C(A): maximized minimal enclosing area
    BoundaryData maximizer;
    double boundary_area_achieved = 0.0;
    bool converged = false;
};

// alpha_C(A) = sup { min(Sigma, u_f^k g) : \int f^p dA = A, 0 <= f <= C } by
// projected supergradient ascent over axisymmetric boundary data. The
// supergradient differentiates the area of the active minimal enclosure(s)
// through u_f (ties averaged); the projection alternates box clamp and p-norm
// rescale, and the saturation lift f -> f + s(C - f) restores
// \int f^p dA = A exactly when C is large enough.
AlphaResult alpha_C(const Context& ctx, double A, double C, int starts = 3,
                    std::uint64_t seed = 414243, par::Exec exec = par::Exec::parallel);

struct AlphaLimit {
    double value = 0.0;
    std::vector<AlphaResult> trail;
    bool converged = false;
};

// alpha(A) = lim_{C -> inf} alpha_C(A), realized along an increasing C
// schedule with a relative stopping rule (default 1e-3).
AlphaLimit alpha_limit(const Context& ctx, double A, const std::vector<double>& c_schedule,
                       int starts = 3, std::uint64_t seed = 414243,
                       par::Exec exec = par::Exec::parallel, double stop_rel = 1e-3);

// Radial restriction: minimal enclosing area of the constant-data member with
// boundary area A (on the flat exterior: the Schwarzschild-family member u_A).
double alpha_radial(const Context& ctx, double A);

struct ProfilePropertyReport {
    std::vector<double> A_grid;
    std::vector<double> alpha;
    bool nondecreasing = false;
    bool bounded_by_A = false;
    bool ratio_nonincreasing = false;
    bool lipschitz = false;
    bool strict_below_persists = false;
    double max_lipschitz_quotient = 0.0;
    bool all_pass() const {
        return nondecreasing && bounded_by_A && ratio_nonincreasing && lipschitz &&
               strict_below_persists;
    }
};

// Pure property checker (test harnesses can inject synthetic failures).
ProfilePropertyReport check_profile_properties(const std::vector<double>& A_grid,
                                               const std::vector<double>& values,
                                               double rel_tol = 1e-4,
                                               double lipschitz_tol = 1e-3);

// Computes alpha_C on the grid and checks monotonicity, the alpha <= A bound,
// ratio monotonicity, and the Lipschitz property.
ProfilePropertyReport profile_properties(const Context& ctx, const std::vector<double>& A_grid,
                                         double C, int starts = 3, std::uint64_t seed = 414243,
                                         par::Exec exec = par::Exec::parallel);

struct MaximizerDiagnostics {
    double contact_measure = 0.0; // H^{n-1}(Sigma-tilde cap Sigma), base metric
    double contact_bound = 0.0;   // A C^{-p}
    double hbar_min = 0.0, hbar_max = 0.0; // over smooth contact nodes
    bool has_contact = false;
    double eta0 = 0.0;       // sup of the base mean curvature of Sigma
    double hbar_bound = 0.0; // eta0 C^{-2/(n-2)}
    double off_sigma_hbar_max = 0.0;
    double f_minus_C_max_on_contact = 0.0;
    std::size_t snap_boundary_nodes = 0; // nodes where H-bar is undefined
    bool contact_within_bound = false;
    bool hbar_within_bound = false; // vacuous (true) without contact
};

// Contact-set diagnostics for an alpha_C maximizer: the outermost
// minimal enclosure, its contact set, and the recorded bounds. Reported, not
// asserted.
MaximizerDiagnostics maximizer_diagnostics(const Context& ctx, const AlphaResult& result);

struct CounterexampleRecord {
    double A = 0.0;
    double C = 0.0;
    double value = 0.0;
    double radial_value = 0.0;
    double excess_rel = 0.0;
    std::vector<double> maximizer_values;
    std::string note;
};

// Emits a record when the general search beats the radial value beyond
// kExceedanceRel (the spherically symmetric maximizer is conjectural).
std::optional<CounterexampleRecord> check_radial_exceedance(const Context& ctx,
                                                            const AlphaResult& result);

} // namespace hp
