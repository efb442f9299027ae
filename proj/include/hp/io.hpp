#pragma once

#include "hp/masschecks.hpp"
#include "hp/minarea.hpp"
#include "hp/profile.hpp"

#include <json.hpp>

#include <string>

namespace hp::io {

using nlohmann::json;

// Geometry: {"n": int, "kind": "flat_exterior"|"warped_product", "r0": float,
//            "rho": [[r, rho_r], ...] (warped only)}
json geometry_to_json(const BaseGeometry& base);
BaseGeometry geometry_from_json(const json& j);

// Grid parameters travel with data artifacts so they re-parse standalone:
// {"n":..., "l_max":..., "resolution":...}
json grid_to_json(const AngularGrid& grid, int resolution);

// Boundary data: {"grid": {...}, "values": [...]}
json boundary_data_to_json(const Context& ctx, const BoundaryData& f, int resolution);
std::vector<double> boundary_values_from_json(const json& j);

// Harmonic function: {"value_at_infinity": x, "coeffs": {"l,m": c}}
json harmonic_to_json(const HarmonicFunction& u);

// Surface: {"radii": [...], "grid_ref": {...}}; area report
// {"on_sigma":..., "off_sigma":..., "total":...}
json surface_to_json(const Context& ctx, const EnclosingSurface& S, int resolution);
json area_to_json(const AreaBreakdown& a);

json invariants_to_json(const InvariantSet& inv);
json inequality_to_json(const InequalityReport& rep);
json counterexample_to_json(const CounterexampleRecord& rec);

// Full-precision scientific formatting (17 significant digits) used by every
// CSV artifact; keeps acceptance-level diffs byte-stable.
std::string format_full(double v);

std::string csv_mu_profile(const std::vector<double>& A, const std::vector<double>& mu_form,
                           const std::vector<double>& mu_dir);
std::string csv_alpha_profile(const std::vector<double>& A, const std::vector<double>& C,
                              const std::vector<double>& alpha_c,
                              const std::vector<double>& alpha_rad,
                              const std::vector<bool>& converged);

void write_text_file(const std::string& path, const std::string& content);

} // namespace hp::io
