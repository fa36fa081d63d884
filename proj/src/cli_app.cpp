#include "qht/cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qht/field_io.hpp"
#include "qht/hexpr.hpp"
#include "qht/solver.hpp"
#include "qht/verify.hpp"

namespace qht {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

} // namespace

Family family_from_name(const std::string& name) {
    if (name == "sigma_k" || name == "hessian") return Family::hessian_k;
    if (name == "monge_ampere" || name == "ma") return Family::monge_ampere;
    if (name == "nm1_monge_ampere" || name == "nm1-ma") return Family::nm1_monge_ampere;
    throw ConfigError("unknown family '" + name +
                      "' (expected sigma_k, monge_ampere, or nm1_monge_ampere)");
}

SolveConfig SolveConfig::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    SolveConfig c;
    c.family = get_or<std::string>(j, "family", c.family);
    family_from_name(c.family); // validate early
    c.k = get_or<int>(j, "k", c.k);
    c.n = get_or<int>(j, "n", c.n);
    c.points_per_axis = get_or<int>(j, "points_per_axis", c.points_per_axis);
    c.scheme = get_or<std::string>(j, "scheme", c.scheme);
    scheme_from_name(c.scheme);
    if (j.contains("datum")) {
        const json& d = j.at("datum");
        c.datum_expr = get_or<std::string>(d, "expr", "");
        c.datum_file = get_or<std::string>(d, "file", "");
    }
    if (c.datum_expr.empty() == c.datum_file.empty())
        throw ConfigError("config must set exactly one of datum.expr / datum.file");
    if (j.contains("omega")) {
        const json& o = j.at("omega");
        c.omega_type = get_or<std::string>(o, "type", "identity");
        c.omega_scale = get_or<double>(o, "scale", 1.0);
        c.omega_diag = get_or<std::vector<double>>(o, "values", {});
        if (o.contains("entries")) {
            try {
                c.omega_entries = o.at("entries").get<std::vector<std::vector<std::vector<double>>>>();
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config field 'omega.entries': ") + e.what());
            }
        }
    }
    c.continuity_steps = get_or<int>(j, "continuity_steps", c.continuity_steps);
    c.tol = get_or<double>(j, "tol", c.tol);
    c.max_iter = get_or<int>(j, "max_iter", c.max_iter);
    c.normalization = get_or<std::string>(j, "normalization", c.normalization);
    if (c.normalization != "mean_zero" && c.normalization != "sup_zero")
        throw ConfigError("normalization must be mean_zero or sup_zero");
    c.out = get_or<std::string>(j, "out", c.out);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    if (family_from_name(c.family) == Family::hessian_k && (c.k < 1 || c.k > c.n))
        throw ConfigError("sigma_k family needs 1 <= k <= n");
    if (c.continuity_steps < 1 || c.continuity_steps > 64)
        throw ConfigError("continuity_steps must be in 1..64");
    return c;
}

SolveConfig SolveConfig::from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_json_string(ss.str());
}

std::string SolveConfig::to_json_string() const {
    json j{
        {"family", family},
        {"n", n},
        {"points_per_axis", points_per_axis},
        {"scheme", scheme},
        {"continuity_steps", continuity_steps},
        {"tol", tol},
        {"max_iter", max_iter},
        {"normalization", normalization},
        {"out", out},
        {"seed", seed},
    };
    if (family_from_name(family) == Family::hessian_k) j["k"] = k;
    json d;
    if (!datum_expr.empty()) d["expr"] = datum_expr;
    if (!datum_file.empty()) d["file"] = datum_file;
    j["datum"] = d;
    json o{{"type", omega_type}};
    if (omega_type == "scaled_identity") o["scale"] = omega_scale;
    if (omega_type == "diag") o["values"] = omega_diag;
    if (omega_type == "constant") o["entries"] = omega_entries;
    j["omega"] = o;
    return j.dump(2);
}

namespace {

QuatMatrix omega_matrix(const SolveConfig& cfg) {
    const int n = cfg.n;
    if (cfg.omega_type == "identity") return QuatMatrix::identity(n);
    if (cfg.omega_type == "scaled_identity") {
        QuatMatrix m = QuatMatrix::identity(n);
        m *= cfg.omega_scale;
        return m;
    }
    if (cfg.omega_type == "diag") {
        if (static_cast<int>(cfg.omega_diag.size()) != n)
            throw ConfigError("omega.values must have n entries");
        return QuatMatrix::diag(cfg.omega_diag);
    }
    if (cfg.omega_type == "constant") {
        if (static_cast<int>(cfg.omega_entries.size()) != n)
            throw ConfigError("omega.entries must be an n x n array of quaternions");
        QuatMatrix m(n);
        for (int r = 0; r < n; ++r) {
            const auto& row = cfg.omega_entries[static_cast<size_t>(r)];
            if (static_cast<int>(row.size()) != n)
                throw ConfigError("omega.entries must be an n x n array of quaternions");
            for (int s = 0; s < n; ++s) {
                const auto& q = row[static_cast<size_t>(s)];
                if (q.size() != 4)
                    throw ConfigError("omega entries must be [w, x, y, z] quadruples");
                m.at(r, s) = Quat(q[0], q[1], q[2], q[3]);
            }
        }
        require_hyperhermitian(m, 1e-10, "omega");
        return m;
    }
    throw ConfigError("unknown omega.type '" + cfg.omega_type + "'");
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials) {
    std::vector<VerifyReport> reports;
    if (suite == "all") {
        reports = verify_all(seed, trials);
    } else if (suite == "algebra") {
        reports.push_back(verify_algebra(seed, trials));
    } else if (suite == "cones") {
        reports.push_back(verify_cones(seed, trials));
    } else if (suite == "forms") {
        reports.push_back(verify_forms(seed, trials));
    } else {
        throw ConfigError("unknown verify suite '" + suite + "'");
    }
    bool ok = true;
    for (const VerifyReport& r : reports) {
        print_report(std::cout, r);
        ok = ok && r.all_passed();
    }
    return ok ? 0 : 1;
}

int run_solve(const SolveConfig& cfg) {
    // configuration phase: errors here are exit code 2
    TorusGrid grid(cfg.n,
                   cfg.points_per_axis > 0 ? cfg.points_per_axis
                                           : TorusGrid::default_points_per_axis(cfg.n),
                   scheme_from_name(cfg.scheme));
    ScalarField datum(grid);
    if (!cfg.datum_expr.empty()) {
        datum = TrigExpr::parse(cfg.datum_expr, cfg.n).realize(grid);
    } else {
        datum = read_field(cfg.datum_file);
        if (!(datum.grid == grid))
            throw ConfigError("datum file grid does not match the configured grid");
    }
    const MatrixField omega = constant_matrix_field(grid, omega_matrix(cfg));
    const EquationSetup setup =
        make_setup(grid, family_from_name(cfg.family), cfg.k, omega, datum);

    NewtonOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;

    json manifest;
    manifest["config"] = json::parse(cfg.to_json_string());
    manifest["operator"] = setup.cone.name;

    // solve phase: errors here are exit code 3
    ContinuityResult result{ScalarField(grid), 1.0, {}, {}, 0, 0.0, {}, {}};
    try {
        result = continuity_solve(setup, cfg.continuity_steps, opts);
    } catch (const StepFailure& e) {
        std::cerr << "solver failed: " << e.what() << "\n";
        manifest["status"] = "failed";
        manifest["error"] = e.what();
        manifest["t_reached"] = e.t_failed;
        std::ofstream ms(cfg.out + ".manifest.json");
        ms << manifest.dump(2) << "\n";
        return 3;
    }

    ScalarField phi = result.phi;
    if (cfg.normalization == "sup_zero") {
        double mx = phi.v.empty() ? 0.0 : phi.v[0];
        for (double x : phi.v) mx = std::max(mx, x);
        for (double& x : phi.v) x -= mx;
    }

    const double b_integral = b_from_integral(setup, result.phi);

    manifest["status"] = "ok";
    manifest["b"] = result.b;
    manifest["b_from_integral"] = b_integral;
    manifest["final_residual"] = result.final_residual;
    manifest["total_newton_iterations"] = result.total_iterations;
    manifest["iterations_per_step"] = result.iterations_per_step;
    manifest["t_path"] = result.t_path;
    manifest["phi_c0_norm"] = c0_norm(result.phi);
    manifest["phi_grad_sup"] = grad_supnorm(result.phi);
    manifest["outputs"] = {{"phi", cfg.out + ".phi"},
                           {"diagnostics", cfg.out + ".diagnostics.csv"},
                           {"manifest", cfg.out + ".manifest.json"}};

    write_field(cfg.out + ".phi", phi);
    write_diagnostics_csv(cfg.out + ".diagnostics.csv", result.diagnostics);
    std::ofstream ms(cfg.out + ".manifest.json");
    if (!ms) throw IoError("cannot open for writing: " + cfg.out + ".manifest.json");
    ms << manifest.dump(2) << "\n";

    std::cout << "solved " << setup.cone.name << " on n=" << cfg.n << " grid ("
              << grid.points() << " points, " << cfg.scheme << ")\n"
              << "  b = " << result.b << "  (integral estimate " << b_integral << ")\n"
              << "  residual sup = " << result.final_residual << " after "
              << result.total_iterations << " Newton iterations over " << result.t_path.size()
              << " continuity points\n"
              << "  outputs: " << cfg.out << ".phi, " << cfg.out << ".diagnostics.csv, "
              << cfg.out << ".manifest.json\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"torus solver for quaternionic Hessian-type equations"};
    app.set_help_flag("-h,--help", "print usage");

    std::string config_path, verify_suite, out_override, scheme_override;
    int trials = 200;
    int steps_override = 0;
    std::uint64_t seed = 12345;
    bool seed_given = false;

    app.add_option("--config", config_path, "JSON solve configuration file");
    app.add_option("--verify", verify_suite, "run a property suite")
        ->check(CLI::IsMember({"algebra", "cones", "forms", "all"}));
    app.add_option("--trials", trials, "trials per property for --verify")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "seed for --verify")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--out", out_override, "output path prefix override");
    app.add_option("--scheme", scheme_override, "derivative scheme override")
        ->check(CLI::IsMember({"central2", "spectral"}));
    app.add_option("--steps", steps_override, "continuity step count override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (!verify_suite.empty()) return run_verify(verify_suite, seed, trials);
        if (config_path.empty()) {
            std::cerr << "nothing to do: pass --config FILE or --verify SUITE\n";
            return 2;
        }
        SolveConfig cfg = SolveConfig::from_json_file(config_path);
        if (!out_override.empty()) cfg.out = out_override;
        if (!scheme_override.empty()) cfg.scheme = scheme_override;
        if (steps_override > 0) cfg.continuity_steps = steps_override;
        if (seed_given) cfg.seed = seed;
        return run_solve(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace qht
