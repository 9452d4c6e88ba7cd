#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/cavity_modes.hpp"
#include "casimir/units.hpp"
#include "casimir/verify.hpp"

namespace casimir::cli {

inline constexpr int kSchemaVersion = 1;

/// Exit-code contract.
inline constexpr int kSuccess = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kNumericalFailure = 2;

enum class Format { human, csv, json };
enum class Route { numeric_sum, closed_form, series };

Format parse_format(const std::string& text);
Route parse_route(const std::string& text);
UnitSystem parse_units(const std::string& text);
std::string route_name(Route route);

/// Numerical knobs shared by the commands.
struct Tolerances {
    double tolerance = 1e-10;       // relative target for quadrature and tail bounds
    std::size_t n_max = 10'000'000;  // mode cap for numeric_sum
    std::size_t h_max = 12;          // expansion order for series
};

/// One evaluated (a, lambda, route) point. Missing values are NaN and
/// `error` is set when the route failed.
struct ReportRow {
    double a = 0.0;
    double lambda = 0.0;
    Route route = Route::closed_form;
    double force_per_area = 0.0;
    double divergent_part = 0.0;
    double finite_part = 0.0;
    double remainder = 0.0;
    double error_estimate = 0.0;
    std::optional<std::string> error;
    int error_exit = kSuccess;
};

/// Evaluates one row; routine failures are captured in the row, not thrown.
ReportRow evaluate_row(double a, double lambda, Route route, const UnitSystem& units,
                       const Tolerances& tol);

inline constexpr const char* kCsvHeader =
    "a,lambda,route,force_per_area,divergent_part,finite_part,remainder,error_estimate";

struct VerifyCommand {
    VerifyOptions options;
    Format format = Format::human;
};

struct ForceCommand {
    double a = 1.0;
    std::optional<double> lambda;  // default 0.05 a
    Route route = Route::closed_form;
    UnitSystem units = UnitSystem::natural();
    Format format = Format::human;
    Tolerances tol;
    bool extract = false;
};

struct SweepCommand {
    std::vector<double> a_values;
    std::vector<double> lambda_values;
    std::vector<Route> routes;
    UnitSystem units = UnitSystem::natural();
    Format format = Format::csv;
    Tolerances tol;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ExtractCommand {
    double a = 1.0;
    std::vector<double> lambda_grid;  // empty: default grid {0.02..0.10} a
    UnitSystem units = UnitSystem::natural();
    Format format = Format::human;
};

struct ModesCommand {
    int n_max = 3;
    CavityGeometry geom;
    UnitSystem units = UnitSystem::natural();
    Format format = Format::csv;
    bool direct = false;  // add the plate-quadrature column
    double tolerance = 1e-10;
};

// Each command writes its report to `out`, diagnostics to `err`, and
// returns the process exit code.
int run_verify_command(const VerifyCommand& cmd, std::ostream& out, std::ostream& err);
int run_force_command(const ForceCommand& cmd, std::ostream& out, std::ostream& err);
int run_sweep_command(const SweepCommand& cmd, std::ostream& out, std::ostream& err);
int run_extract_command(const ExtractCommand& cmd, std::ostream& out, std::ostream& err);
int run_modes_command(const ModesCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
