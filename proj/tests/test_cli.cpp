#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "casimir/errors.hpp"
#include "commands.hpp"
#include "settings.hpp"

using namespace casimir;
using namespace casimir::cli;
using nlohmann::json;

namespace {

Settings::EnvLookup fake_env(std::map<std::string, std::string> vars) {
    return [vars](const std::string& name) -> std::optional<std::string> {
        auto it = vars.find(name);
        if (it == vars.end()) return std::nullopt;
        return it->second;
    };
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& text) {
        path = std::filesystem::temp_directory_path() /
               ("casimir_test_" + std::to_string(std::hash<std::string>{}(text)) + ".conf");
        std::ofstream(path) << text;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("settings precedence: flag > env > file > default") {
    TempFile conf("# comment\ntolerance = 1e-6\nunits=si  # trailing\n\nh_max = 8\n");
    Settings s(fake_env({{"CASIMIR_TOLERANCE", "1e-7"}}));
    s.load_file(conf.path.string());

    CHECK(*s.resolve("tolerance", std::string("1e-9")) == "1e-9");
    CHECK(*s.resolve("tolerance", std::nullopt) == "1e-7");
    CHECK(*s.resolve("units", std::nullopt) == "si");
    CHECK(*s.resolve("h_max", std::nullopt) == "8");
    CHECK_FALSE(s.resolve("n_max", std::nullopt).has_value());
    CHECK(Settings::env_name("lambda_grid") == "CASIMIR_LAMBDA_GRID");
}

TEST_CASE("settings reject malformed config") {
    Settings s(fake_env({}));
    TempFile bad("tolerance 1e-6\n");
    CHECK_THROWS_AS(s.load_file(bad.path.string()), InvalidArgument);
    CHECK_THROWS_AS(s.load_file("/nonexistent/casimir.conf"), InvalidArgument);
}

TEST_CASE("value parsers") {
    CHECK(parse_double("a", "1.5e-6") == 1.5e-6);
    CHECK_THROWS_AS(parse_double("a", "1.5x"), InvalidArgument);
    CHECK_THROWS_AS(parse_double("a", ""), InvalidArgument);
    CHECK(parse_count("n", "12") == 12);
    CHECK_THROWS_AS(parse_count("n", "-3"), InvalidArgument);
    CHECK(parse_double_list("g", "0.1, 0.2,0.3") == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(parse_word_list("closed_form,series") == std::vector<std::string>{"closed_form", "series"});
    CHECK(parse_route("numeric_sum") == Route::numeric_sum);
    CHECK_THROWS_AS(parse_route("zeta"), InvalidArgument);
    CHECK(parse_format("json") == Format::json);
    CHECK(parse_units("si").mode == UnitMode::si);
    CHECK_THROWS_AS(parse_units("cgs"), InvalidArgument);
}

TEST_CASE("force reports the regularized total and its split") {
    ForceCommand cmd;
    cmd.a = 1.0;
    cmd.lambda = 1.0;
    cmd.format = Format::json;
    std::ostringstream out, err;
    REQUIRE(run_force_command(cmd, out, err) == kSuccess);
    const auto doc = json::parse(out.str());
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["command"] == "force");
    CHECK(doc["row"]["force_per_area"].get<double>() == doctest::Approx(-0.08084857109961710).epsilon(1e-13));
    CHECK(doc["orientation"] == "attractive");

    const auto row = doc["row"];
    const double sum = row["divergent_part"].get<double>() + row["finite_part"].get<double>() +
                       row["remainder"].get<double>();
    CHECK(sum == doctest::Approx(row["force_per_area"].get<double>()).epsilon(1e-12));
}

TEST_CASE("numeric_sum and closed_form rows agree") {
    for (double lambda : {0.05, 0.3, 1.0}) {
        const auto numeric = evaluate_row(1.0, lambda, Route::numeric_sum, UnitSystem::natural(), {});
        const auto closed = evaluate_row(1.0, lambda, Route::closed_form, UnitSystem::natural(), {});
        REQUIRE_FALSE(numeric.error);
        REQUIRE_FALSE(closed.error);
        CHECK(std::abs(numeric.force_per_area / closed.force_per_area - 1.0) < 1e-8);
    }
}

TEST_CASE("SI extraction at one micron") {
    ForceCommand cmd;
    cmd.a = 1e-6;
    cmd.units = UnitSystem::si();
    cmd.extract = true;
    cmd.format = Format::json;
    std::ostringstream out, err;
    REQUIRE(run_force_command(cmd, out, err) == kSuccess);
    const auto doc = json::parse(out.str());
    CHECK(doc["units"] == "si");
    const double magnitude = doc["extraction"]["finite_part_magnitude"].get<double>();
    CHECK(std::abs(magnitude / 1.30e-3 - 1.0) < 0.01);
    CHECK(doc["casimir_closed_form"].get<double>() == doctest::Approx(1.3001257724477535e-3).epsilon(1e-9));
}

TEST_CASE("sweep emits one row per point in input order, deterministically") {
    SweepCommand cmd;
    cmd.a_values = {1.0, 2.0};
    cmd.lambda_values = {0.05, 0.1, 0.3};
    cmd.routes = {Route::closed_form};
    cmd.threads = 4;

    std::ostringstream first, second, err;
    REQUIRE(run_sweep_command(cmd, first, err) == kSuccess);
    cmd.threads = 1;
    REQUIRE(run_sweep_command(cmd, second, err) == kSuccess);
    CHECK(first.str() == second.str());

    const auto rows = lines(first.str());
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == "# schema_version=1");
    CHECK(rows[1] == "a,lambda,route,force_per_area,divergent_part,finite_part,remainder,error_estimate");
    CHECK(rows[2].rfind("1,0.050000000000000003,closed_form,", 0) == 0);
    CHECK(rows[7].rfind("2,0.29999999999999999,closed_form,", 0) == 0);
}

TEST_CASE("sweep keeps failed rows and exits 1") {
    SweepCommand cmd;
    cmd.a_values = {1.0};
    cmd.lambda_values = {1e-10, 0.1};
    cmd.routes = {Route::closed_form};
    cmd.format = Format::json;
    std::ostringstream out, err;
    CHECK(run_sweep_command(cmd, out, err) == kCheckFailure);
    const auto doc = json::parse(out.str());
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["force_per_area"].is_null());
    CHECK(doc["rows"][0]["error"].is_string());
    CHECK(doc["rows"][1]["error"].is_null());
    CHECK(err.str().find("row 0") != std::string::npos);
}

TEST_CASE("extract exit codes") {
    ExtractCommand cmd;
    cmd.a = 1.0;
    std::ostringstream out, err;
    CHECK(run_extract_command(cmd, out, err) == kSuccess);

    cmd.lambda_grid = {0.1, 0.1002, 0.1005, 0.1008, 0.101};
    CHECK(run_extract_command(cmd, out, err) == kCheckFailure);

    cmd.lambda_grid = {0.02, 0.04};
    CHECK(run_extract_command(cmd, out, err) == kNumericalFailure);

    cmd.lambda_grid.clear();
    cmd.a = -1.0;
    CHECK(run_extract_command(cmd, out, err) == kNumericalFailure);
}

TEST_CASE("modes table lists every mode with negative stress") {
    ModesCommand cmd;
    cmd.n_max = 2;
    cmd.direct = true;
    cmd.format = Format::json;
    std::ostringstream out, err;
    REQUIRE(run_modes_command(cmd, out, err) == kSuccess);
    const auto doc = json::parse(out.str());
    REQUIRE(doc["rows"].size() == 8);
    for (const auto& row : doc["rows"]) {
        const double closed = row["sigma_zz"].get<double>();
        CHECK(closed < 0.0);
        CHECK(std::abs(row["sigma_zz_direct"].get<double>() / closed - 1.0) < 1e-8);
    }
}

TEST_CASE("verify JSON is a single document and honours the fault factor") {
    VerifyCommand cmd;
    cmd.options.profile = VerifyProfile::quick;
    cmd.format = Format::json;
    std::ostringstream out, err;
    CHECK(run_verify_command(cmd, out, err) == kSuccess);
    const auto doc = json::parse(out.str());
    CHECK(doc["passed"] == true);

    cmd.options.sigma_fault_factor = 1.01;
    std::ostringstream faulty;
    CHECK(run_verify_command(cmd, faulty, err) == kCheckFailure);
    CHECK(json::parse(faulty.str())["passed"] == false);
}

TEST_CASE("schema file lists the fields the commands emit") {
    std::ifstream in(CASIMIR_REPORT_SCHEMA);
    REQUIRE(in);
    const auto schema = json::parse(in);
    const auto row = schema["$defs"]["row"]["required"];
    for (const char* key : {"a", "lambda", "route", "force_per_area", "divergent_part", "finite_part",
                            "remainder", "error_estimate", "error"}) {
        CHECK(std::find(row.begin(), row.end(), key) != row.end());
    }
}
