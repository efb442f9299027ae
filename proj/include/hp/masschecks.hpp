#pragma once

#include "hp/invariants.hpp"

#include <string>
#include <vector>

namespace hp {

// Satisfaction tolerance for the inequality suite (absolute, mass units).
inline constexpr double kInequalityTol = 1e-6;

// One evaluated inequality. These are conditional consequence checks of the
// conjectured Penrose extension: violations are findings, never errors, and
// nothing here asserts the conjecture itself.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    double margin = 0.0; // lhs - rhs
    bool applicable = true;
    std::string hypotheses_note;
};

// (1/2) (area/omega)^{(n-2)/(n-1)}.
double penrose_rhs(int n, double area);

// mu(A) >= (1/2)(alpha(A)/omega)^{(n-2)/(n-1)}, applicable when alpha(A) < A.
InequalityReport check_mu_alpha(const Context& ctx, double A, double alpha_value);

// I1 + I2 >= 0.
InequalityReport check_I_sum(const Context& ctx);

struct ZasMassResult {
    double zas_mass = 0.0;        // -I2, the singularity mass bound
    double adm_mass_phik = 0.0;   // m_ADM(phi^k g) = m_ADM(g) - 2 C_g = I1
};

// ZAS mass of the singular metric phi^k g and the ADM mass it bounds.
ZasMassResult zas_mass(const Context& ctx);

// Whether R >= -1e-8 held on the sampled radial range; every report carries
// this note (the conditional inequalities assume nonnegative scalar curvature).
std::string scalar_curvature_note(const Context& ctx);

} // namespace hp
