// casimir: command-line front end for the Casimir mode-sum library.
//
//   casimir verify  [--profile standard|quick] [--json] [--inject-fault]
//   casimir force   --a A [--lambda L] [--route R] [--units natural|si] [--extract]
//   casimir sweep   --a-values A,... --lambda-values L,... [--routes R,...] [--format csv|json]
//   casimir extract --a A [--lambda-grid L,...]
//   casimir modes   [--max-mode N] [--L L] [--a A] [--direct]
//
// Settings resolve as flag > CASIMIR_<KEY> environment variable > config file
// (--config or CASIMIR_CONFIG) > built-in default.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "casimir/errors.hpp"
#include "commands.hpp"
#include "settings.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

using Flag = std::optional<std::string>;

struct Flags {
    Flag config;
    // shared
    Flag a, lambda, route, routes, units, format, tolerance, n_max, h_max;
    // verify
    Flag profile;
    bool json = false;
    bool inject_fault = false;
    // sweep
    Flag a_values, lambda_values, threads;
    // extract
    Flag lambda_grid;
    // modes
    Flag max_mode, box;
    bool extract = false;
    bool direct = false;
};

std::string get(const Settings& s, const std::string& key, const Flag& flag, const std::string& fallback) {
    return s.resolve(key, flag).value_or(fallback);
}

std::optional<std::string> get(const Settings& s, const std::string& key, const Flag& flag) {
    return s.resolve(key, flag);
}

Tolerances tolerances(const Settings& s, const Flags& f) {
    Tolerances t;
    if (auto v = get(s, "tolerance", f.tolerance)) t.tolerance = parse_double("tolerance", *v);
    if (auto v = get(s, "n_max", f.n_max)) t.n_max = parse_count("n_max", *v);
    if (auto v = get(s, "h_max", f.h_max)) t.h_max = parse_count("h_max", *v);
    return t;
}

double required_length(const Settings& s, const std::string& key, const Flag& flag) {
    const auto v = get(s, key, flag);
    if (!v) throw InvalidArgument("missing --" + key);
    return parse_double(key, *v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir force from the regularized cavity-mode stress sum"};
    app.require_subcommand(1);

    Flags f;
    app.add_option("--config", f.config, "key = value settings file");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--profile", f.profile, "standard or quick");
    verify->add_flag("--json", f.json, "emit a JSON report");
    verify->add_option("--format", f.format, "human or json");
    verify->add_flag("--inject-fault", f.inject_fault, "perturb the per-mode stress closed form (test hook)");

    auto* force = app.add_subcommand("force", "regularized force per area at one (a, lambda)");
    force->add_option("--a", f.a, "plate separation");
    force->add_option("--lambda", f.lambda, "cutoff length (default 0.05 a)");
    force->add_option("--route", f.route, "numeric_sum, closed_form or series");
    force->add_option("--units", f.units, "natural or si");
    force->add_option("--format", f.format, "human, csv or json");
    force->add_option("--tolerance", f.tolerance, "relative tolerance of the numeric route");
    force->add_option("--n-max", f.n_max, "mode cap of the numeric route");
    force->add_option("--h-max", f.h_max, "expansion order of the series route");
    force->add_flag("--extract", f.extract, "also fit the finite part on the default grid");

    auto* sweep = app.add_subcommand("sweep", "force over an (a, lambda, route) grid");
    sweep->add_option("--a-values", f.a_values, "comma-separated separations");
    sweep->add_option("--lambda-values", f.lambda_values, "comma-separated cutoffs");
    sweep->add_option("--routes", f.routes, "comma-separated routes");
    sweep->add_option("--units", f.units, "natural or si");
    sweep->add_option("--format", f.format, "csv or json");
    sweep->add_option("--tolerance", f.tolerance, "relative tolerance of the numeric route");
    sweep->add_option("--n-max", f.n_max, "mode cap of the numeric route");
    sweep->add_option("--h-max", f.h_max, "expansion order of the series route");
    sweep->add_option("--threads", f.threads, "worker threads (default: all cores)");

    auto* extract = app.add_subcommand("extract", "fit divergent and finite parts");
    extract->add_option("--a", f.a, "plate separation");
    extract->add_option("--lambda-grid", f.lambda_grid, "comma-separated cutoffs (default 0.02..0.10 a)");
    extract->add_option("--units", f.units, "natural or si");
    extract->add_option("--format", f.format, "human, csv or json");

    auto* modes = app.add_subcommand("modes", "per-mode plate stress over a mode grid");
    modes->add_option("--max-mode", f.max_mode, "largest n_x, n_y, n_z (default 3)");
    modes->add_option("--L", f.box, "transverse box side (default 1)");
    modes->add_option("--a", f.a, "plate separation (default 1)");
    modes->add_option("--units", f.units, "natural or si");
    modes->add_option("--format", f.format, "csv or json");
    modes->add_option("--tolerance", f.tolerance, "quadrature tolerance for --direct");
    modes->add_flag("--direct", f.direct, "add the plate-quadrature value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kNumericalFailure;
    }

    try {
        Settings settings;
        if (auto path = settings.resolve("config", f.config)) settings.load_file(*path);
        const auto units = [&] { return parse_units(get(settings, "units", f.units, "natural")); };

        if (*verify) {
            VerifyCommand cmd;
            const auto profile = get(settings, "profile", f.profile, "standard");
            if (profile == "quick") {
                cmd.options.profile = VerifyProfile::quick;
            } else if (profile != "standard") {
                throw InvalidArgument("unknown profile '" + profile + "' (standard, quick)");
            }
            cmd.format = f.json ? Format::json : parse_format(get(settings, "format", f.format, "human"));
            if (f.inject_fault) cmd.options.sigma_fault_factor = 1.01;
            return run_verify_command(cmd, std::cout, std::cerr);
        }
        if (*force) {
            ForceCommand cmd;
            cmd.a = required_length(settings, "a", f.a);
            if (auto v = get(settings, "lambda", f.lambda)) cmd.lambda = parse_double("lambda", *v);
            cmd.route = parse_route(get(settings, "route", f.route, "closed_form"));
            cmd.units = units();
            cmd.format = parse_format(get(settings, "format", f.format, "human"));
            cmd.tol = tolerances(settings, f);
            cmd.extract = f.extract;
            return run_force_command(cmd, std::cout, std::cerr);
        }
        if (*sweep) {
            SweepCommand cmd;
            const auto a_values = get(settings, "a_values", f.a_values);
            const auto lambda_values = get(settings, "lambda_values", f.lambda_values);
            if (!a_values || !lambda_values) throw InvalidArgument("sweep needs --a-values and --lambda-values");
            cmd.a_values = parse_double_list("a_values", *a_values);
            cmd.lambda_values = parse_double_list("lambda_values", *lambda_values);
            for (const auto& r : parse_word_list(get(settings, "routes", f.routes, "closed_form"))) {
                cmd.routes.push_back(parse_route(r));
            }
            cmd.units = units();
            cmd.format = parse_format(get(settings, "format", f.format, "csv"));
            cmd.tol = tolerances(settings, f);
            if (auto v = get(settings, "threads", f.threads)) {
                cmd.threads = static_cast<unsigned>(parse_count("threads", *v));
            }
            return run_sweep_command(cmd, std::cout, std::cerr);
        }
        if (*extract) {
            ExtractCommand cmd;
            cmd.a = required_length(settings, "a", f.a);
            if (auto v = get(settings, "lambda_grid", f.lambda_grid)) {
                cmd.lambda_grid = parse_double_list("lambda_grid", *v);
            }
            cmd.units = units();
            cmd.format = parse_format(get(settings, "format", f.format, "human"));
            return run_extract_command(cmd, std::cout, std::cerr);
        }
        if (*modes) {
            ModesCommand cmd;
            cmd.n_max = static_cast<int>(parse_count("max_mode", get(settings, "max_mode", f.max_mode, "3")));
            cmd.geom.L = parse_double("L", get(settings, "L", f.box, "1"));
            cmd.geom.a = parse_double("a", get(settings, "a", f.a, "1"));
            cmd.units = units();
            cmd.format = parse_format(get(settings, "format", f.format, "csv"));
            if (auto v = get(settings, "tolerance", f.tolerance)) cmd.tolerance = parse_double("tolerance", *v);
            cmd.direct = f.direct;
            return run_modes_command(cmd, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "casimir: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kNumericalFailure;
}
