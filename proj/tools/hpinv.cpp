// hpinv: invariants and profile functions of exterior geometries.
//
// Reads a JSON run configuration, dispatches one command, and writes CSV/JSON
// artifacts into the output directory. Outputs are byte-deterministic for a
// fixed config and seed; run_meta.json (wall time) is the one exception and
// is excluded from determinism comparisons.

#include "hp/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string command;
    hp::BaseGeometry geometry;
    std::vector<double> A_values;
    std::vector<double> C_schedule; // empty: per-A geometric schedule
    int l_max = 12;
    int resolution = 24;
    int starts = 3;
    std::uint64_t seed = 12345;
    std::string output_dir = "out";
    double alpha_converge_rel = 1e-3;
};

RunConfig parse_config(const json& j) {
    if (!j.contains("command")) throw std::invalid_argument("config: missing field 'command'");
    if (!j.contains("geometry")) throw std::invalid_argument("config: missing field 'geometry'");
    RunConfig cfg{j.at("command").get<std::string>(),
                  hp::io::geometry_from_json(j.at("geometry")),
                  {}, {}, 12, 24, 3, 12345, "out", 1e-3};
    static const char* known[] = {"invariants", "mu", "alpha", "minarea", "checks"};
    bool ok = false;
    for (const char* k : known) ok = ok || cfg.command == k;
    if (!ok) throw std::invalid_argument("config: unknown command '" + cfg.command + "'");

    if (cfg.geometry.n() > 3) cfg.l_max = 0;
    if (j.contains("A_values")) cfg.A_values = j.at("A_values").get<std::vector<double>>();
    if (j.contains("C_schedule")) cfg.C_schedule = j.at("C_schedule").get<std::vector<double>>();
    if (j.contains("L_max")) cfg.l_max = j.at("L_max").get<int>();
    if (j.contains("resolution")) cfg.resolution = j.at("resolution").get<int>();
    if (j.contains("starts")) cfg.starts = j.at("starts").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("alpha_converge_rel"))
            cfg.alpha_converge_rel = t.at("alpha_converge_rel").get<double>();
    }
    for (double a : cfg.A_values)
        if (!(a > 0.0)) throw std::invalid_argument("config: A_values entries must be positive");
    if (cfg.A_values.empty() && cfg.command != "invariants") {
        const double pi = 3.14159265358979323846;
        cfg.A_values = {4 * pi, 16 * pi, 64 * pi, 256 * pi};
    }
    return cfg;
}

std::vector<double> schedule_for(const hp::Context& ctx, const RunConfig& cfg, double A) {
    if (!cfg.C_schedule.empty()) return cfg.C_schedule;
    const double c0 = std::max(1.0, std::pow(A / ctx.sigma_area(), 1.0 / ctx.consts().p));
    return {c0, 2 * c0, 4 * c0};
}

int run(const RunConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    auto out_path = [&](const std::string& name) { return cfg.output_dir + "/" + name; };

    hp::Context ctx(cfg.geometry, hp::sphere_quadrature(cfg.geometry.n(), cfg.l_max,
                                                        cfg.resolution));
    int status = 0;

    if (cfg.command == "invariants") {
        const hp::InvariantSet inv = hp::compute_invariants(ctx);
        hp::io::write_text_file(out_path("invariants.json"),
                                hp::io::invariants_to_json(inv).dump(2) + "\n");
    } else if (cfg.command == "mu") {
        std::vector<double> mu_form(cfg.A_values.size()), mu_dir(cfg.A_values.size());
        const hp::InvariantSet inv = hp::compute_invariants(ctx);
        for (std::size_t i = 0; i < cfg.A_values.size(); ++i) {
            mu_form[i] = hp::mu_formula(inv, ctx.n(), cfg.A_values[i]);
            hp::MuResult r = hp::mu_direct(ctx, cfg.A_values[i], cfg.starts, cfg.seed);
            mu_dir[i] = r.mu;
            if (!r.converged) status = 2;
        }
        hp::io::write_text_file(out_path("mu_profile.csv"),
                                hp::io::csv_mu_profile(cfg.A_values, mu_form, mu_dir));
    } else if (cfg.command == "alpha") {
        std::vector<double> As, Cs, vals, rads;
        std::vector<bool> convs;
        json records = json::array();
        std::vector<double> final_alpha;
        for (double A : cfg.A_values) {
            const auto sched = schedule_for(ctx, cfg, A);
            hp::AlphaLimit lim = hp::alpha_limit(ctx, A, sched, cfg.starts, cfg.seed,
                                                 hp::par::Exec::parallel,
                                                 cfg.alpha_converge_rel);
            const double rad = hp::alpha_radial(ctx, A);
            for (const auto& r : lim.trail) {
                As.push_back(r.A);
                Cs.push_back(r.C);
                vals.push_back(r.value);
                rads.push_back(rad);
                convs.push_back(r.converged);
                if (auto rec = hp::check_radial_exceedance(ctx, r))
                    records.push_back(hp::io::counterexample_to_json(*rec));
            }
            final_alpha.push_back(lim.value);
            if (!lim.converged) status = 2;
        }
        hp::io::write_text_file(out_path("alpha_profile.csv"),
                                hp::io::csv_alpha_profile(As, Cs, vals, rads, convs));
        if (cfg.A_values.size() >= 2) {
            const auto rep = hp::check_profile_properties(cfg.A_values, final_alpha);
            json pj{{"A_grid", rep.A_grid},
                    {"alpha", rep.alpha},
                    {"nondecreasing", rep.nondecreasing},
                    {"bounded_by_A", rep.bounded_by_A},
                    {"ratio_nonincreasing", rep.ratio_nonincreasing},
                    {"lipschitz", rep.lipschitz},
                    {"strict_below_persists", rep.strict_below_persists},
                    {"max_lipschitz_quotient", rep.max_lipschitz_quotient},
                    {"all_pass", rep.all_pass()}};
            hp::io::write_text_file(out_path("alpha_properties.json"), pj.dump(2) + "\n");
        }
        hp::io::write_text_file(out_path("counterexamples.json"), records.dump(2) + "\n");
    } else if (cfg.command == "minarea") {
        json results = json::array();
        for (double A : cfg.A_values) {
            const double c = std::pow(A / ctx.sigma_area(), 1.0 / ctx.consts().p);
            hp::HarmonicFunction u =
                hp::harmonic_extension(ctx, hp::BoundaryData::constant(ctx, c), 1.0);
            hp::MinAreaResult r = hp::min_area_radial(ctx, u);
            if (!r.converged) status = 2;
            json entry;
            entry["A"] = A;
            entry["value"] = r.value;
            entry["conformal_factor"] = hp::io::harmonic_to_json(u);
            entry["surface"] = hp::io::surface_to_json(ctx, r.surface, cfg.resolution);
            entry["area"] = hp::io::area_to_json(hp::surface_area(ctx, u, r.surface));
            results.push_back(std::move(entry));
        }
        hp::io::write_text_file(out_path("minarea.json"),
                                json{{"results", results}}.dump(2) + "\n");
    } else if (cfg.command == "checks") {
        json reports = json::array();
        reports.push_back(hp::io::inequality_to_json(hp::check_I_sum(ctx)));
        for (double A : cfg.A_values) {
            const double alpha = hp::alpha_radial(ctx, A);
            reports.push_back(hp::io::inequality_to_json(hp::check_mu_alpha(ctx, A, alpha)));
        }
        const hp::ZasMassResult z = hp::zas_mass(ctx);
        json zj{{"name", "zas_mass"},
                {"zas_mass", z.zas_mass},
                {"adm_mass_phik", z.adm_mass_phik},
                {"hypotheses_note", hp::scalar_curvature_note(ctx)}};
        reports.push_back(std::move(zj));
        hp::io::write_text_file(out_path("checks.json"), reports.dump(2) + "\n");
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic conformal class invariants and profile functions"};
    std::string config_path, command_override, out_override;
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--command", command_override, "override config command");
    app.add_option("--out", out_override, "override output directory");
    std::uint64_t seed_raw = 0;
    auto* seed_opt = app.add_option("--seed", seed_raw, "override RNG seed");
    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config: " << config_path << "\n";
            return 1;
        }
        json j = json::parse(in);
        if (!command_override.empty()) j["command"] = command_override;
        if (!out_override.empty()) j["output_dir"] = out_override;
        if (seed_opt->count() > 0) j["seed"] = seed_raw;

        RunConfig cfg = parse_config(j);
        const int status = run(cfg);

        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json meta{{"command", cfg.command}, {"seed", cfg.seed}, {"wall_seconds", secs},
                  {"exit_status", status}};
        hp::io::write_text_file(cfg.output_dir + "/run_meta.json", meta.dump(2) + "\n");
        return status;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
