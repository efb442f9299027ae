#include "hp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hp::io {

namespace {
json finite_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    if (std::isnan(v)) return json("nan");
    return json(v);
}
} // namespace

json geometry_to_json(const BaseGeometry& base) {
    json j;
    j["n"] = base.n();
    j["r0"] = base.r0();
    if (base.kind() == GeometryKind::FlatExterior) {
        j["kind"] = "flat_exterior";
    } else {
        j["kind"] = "warped_product";
        json rho = json::array();
        const int m = 512;
        for (int i = 0; i < m; ++i) {
            double r = base.r0() * std::pow(base.r_max() / base.r0(), double(i) / (m - 1));
            rho.push_back({r, base.rho(r)});
        }
        j["rho"] = std::move(rho);
    }
    return j;
}

BaseGeometry geometry_from_json(const json& j) {
    if (!j.contains("n")) throw std::invalid_argument("geometry: missing field 'n'");
    if (!j.contains("kind")) throw std::invalid_argument("geometry: missing field 'kind'");
    if (!j.contains("r0")) throw std::invalid_argument("geometry: missing field 'r0'");
    const int n = j.at("n").get<int>();
    const double r0 = j.at("r0").get<double>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "flat_exterior") return BaseGeometry::flat_exterior(n, r0);
    if (kind != "warped_product")
        throw std::invalid_argument("geometry: unknown kind '" + kind + "'");
    if (!j.contains("rho"))
        throw std::invalid_argument("geometry: warped_product needs field 'rho'");
    std::vector<double> rs, rhos;
    for (const auto& pair : j.at("rho")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("geometry: rho entries must be [r, rho_r] pairs");
        rs.push_back(pair[0].get<double>());
        rhos.push_back(pair[1].get<double>());
    }
    return BaseGeometry::warped_from_samples(n, r0, rs, rhos);
}

json grid_to_json(const AngularGrid& grid, int resolution) {
    return json{{"n", grid.dim()}, {"l_max", grid.l_max()}, {"resolution", resolution}};
}

json boundary_data_to_json(const Context& ctx, const BoundaryData& f, int resolution) {
    json j;
    j["grid"] = grid_to_json(*ctx.grid, resolution);
    j["values"] = f.values();
    return j;
}

std::vector<double> boundary_values_from_json(const json& j) {
    if (!j.contains("values")) throw std::invalid_argument("boundary data: missing 'values'");
    return j.at("values").get<std::vector<double>>();
}

json harmonic_to_json(const HarmonicFunction& u) {
    json coeffs = json::object();
    for (std::size_t mi = 0; mi < u.coefficients().size(); ++mi) {
        const auto& m = u.grid().mode(mi);
        coeffs[std::to_string(m.l) + "," + std::to_string(m.m)] = u.coefficients()[mi];
    }
    return json{{"value_at_infinity", u.value_at_infinity()}, {"coeffs", std::move(coeffs)}};
}

json surface_to_json(const Context& ctx, const EnclosingSurface& S, int resolution) {
    json j;
    j["radii"] = S.radii();
    j["grid_ref"] = grid_to_json(*ctx.grid, resolution);
    return j;
}

json area_to_json(const AreaBreakdown& a) {
    return json{{"on_sigma", a.on_sigma}, {"off_sigma", a.off_sigma}, {"total", a.total}};
}

json invariants_to_json(const InvariantSet& inv) {
    return json{{"I1", inv.I1},
                {"I2", inv.I2},
                {"capacity", inv.capacity},
                {"adm_mass", inv.adm_mass_base}};
}

json inequality_to_json(const InequalityReport& rep) {
    return json{{"name", rep.name},
                {"lhs", finite_or_string(rep.lhs)},
                {"rhs", finite_or_string(rep.rhs)},
                {"satisfied", rep.satisfied},
                {"margin", finite_or_string(rep.margin)},
                {"applicable", rep.applicable},
                {"hypotheses_note", rep.hypotheses_note}};
}

json counterexample_to_json(const CounterexampleRecord& rec) {
    return json{{"record", "conjecture_counterexample_candidate"},
                {"A", rec.A},
                {"C", rec.C},
                {"value", rec.value},
                {"radial_value", rec.radial_value},
                {"excess_rel", rec.excess_rel},
                {"maximizer_values", rec.maximizer_values},
                {"note", rec.note}};
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string csv_mu_profile(const std::vector<double>& A, const std::vector<double>& mu_form,
                           const std::vector<double>& mu_dir) {
    std::ostringstream os;
    os << "A,mu_formula,mu_direct,gap\n";
    for (std::size_t i = 0; i < A.size(); ++i)
        os << format_full(A[i]) << ',' << format_full(mu_form[i]) << ','
           << format_full(mu_dir[i]) << ',' << format_full(mu_dir[i] - mu_form[i]) << '\n';
    return os.str();
}

std::string csv_alpha_profile(const std::vector<double>& A, const std::vector<double>& C,
                              const std::vector<double>& alpha_c,
                              const std::vector<double>& alpha_rad,
                              const std::vector<bool>& converged) {
    std::ostringstream os;
    os << "A,C,alpha_C,alpha_radial,converged\n";
    for (std::size_t i = 0; i < A.size(); ++i)
        os << format_full(A[i]) << ',' << format_full(C[i]) << ',' << format_full(alpha_c[i])
           << ',' << format_full(alpha_rad[i]) << ',' << (converged[i] ? 1 : 0) << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

} // namespace hp::io
