#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "casimir/errors.hpp"
#include "casimir/regsum.hpp"
#include "casimir/stress.hpp"

namespace casimir::cli {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string machine(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string human(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

void human_line(std::ostream& out, const std::string& key, const std::string& value) {
    out << key;
    for (std::size_t i = key.size(); i < 34; ++i) out << ' ';
    out << value << '\n';
}

json row_json(const ReportRow& row) {
    return {{"a", number(row.a)},
            {"lambda", number(row.lambda)},
            {"route", route_name(row.route)},
            {"force_per_area", number(row.force_per_area)},
            {"divergent_part", number(row.divergent_part)},
            {"finite_part", number(row.finite_part)},
            {"remainder", number(row.remainder)},
            {"error_estimate", number(row.error_estimate)},
            {"error", row.error ? json(*row.error) : json(nullptr)}};
}

void row_csv(std::ostream& out, const ReportRow& row) {
    out << machine(row.a) << ',' << machine(row.lambda) << ',' << route_name(row.route) << ','
        << machine(row.force_per_area) << ',' << machine(row.divergent_part) << ','
        << machine(row.finite_part) << ',' << machine(row.remainder) << ','
        << machine(row.error_estimate) << '\n';
}

json document(const std::string& command, const UnitSystem& units) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"units", std::string(units.name())}};
}

// Maps library exceptions onto the exit-code contract.
template <class Body>
int guarded(std::ostream& err, const char* command, Body&& body) {
    try {
        return body();
    } catch (const IllConditioned& e) {
        err << command << ": " << e.what() << '\n';
        return kCheckFailure;
    } catch (const NumericalFailure& e) {
        err << command << ": numerical failure: " << e.what() << " (best estimate "
            << machine(e.best_estimate()) << ", error " << machine(e.error_estimate()) << ")\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << command << ": " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace

Format parse_format(const std::string& text) {
    if (text == "human") return Format::human;
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw InvalidArgument("unknown format '" + text + "' (human, csv, json)");
}

Route parse_route(const std::string& text) {
    if (text == "numeric_sum") return Route::numeric_sum;
    if (text == "closed_form") return Route::closed_form;
    if (text == "series") return Route::series;
    throw InvalidArgument("unknown route '" + text + "' (numeric_sum, closed_form, series)");
}

UnitSystem parse_units(const std::string& text) {
    if (text == "natural") return UnitSystem::natural();
    if (text == "si") return UnitSystem::si();
    throw InvalidArgument("unknown unit system '" + text + "' (natural, si)");
}

std::string route_name(Route route) {
    switch (route) {
        case Route::numeric_sum:
            return "numeric_sum";
        case Route::closed_form:
            return "closed_form";
        case Route::series:
            return "series";
    }
    return "unknown";
}

ReportRow evaluate_row(double a, double lambda, Route route, const UnitSystem& units,
                       const Tolerances& tol) {
    ReportRow row;
    row.a = a;
    row.lambda = lambda;
    row.route = route;
    try {
        const Regulator reg{lambda};
        ForceEstimate estimate;
        switch (route) {
            case Route::numeric_sum:
                estimate = force_sum_numeric(a, reg, tol.n_max, tol.tolerance, units);
                break;
            case Route::closed_form:
                estimate = force_closed_form(a, reg, units);
                break;
            case Route::series:
                estimate = force_series(a, reg, tol.h_max, units);
                break;
        }
        const auto parts = decompose(a, reg, estimate.value, units);
        row.force_per_area = estimate.value;
        row.divergent_part = parts.divergent_part(reg);
        row.finite_part = parts.finite_part;
        row.remainder = parts.remainder;
        row.error_estimate = estimate.error_estimate;
    } catch (const std::exception& e) {
        row.force_per_area = row.divergent_part = row.finite_part = row.remainder = kNaN;
        row.error_estimate = kNaN;
        if (const auto* nf = dynamic_cast<const NumericalFailure*>(&e)) {
            row.force_per_area = nf->best_estimate();
            row.error_estimate = nf->error_estimate();
        }
        row.error = e.what();
        row.error_exit = kNumericalFailure;
    }
    return row;
}

int run_verify_command(const VerifyCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, "verify", [&] {
        const VerifyReport report = run_verify(cmd.options);
        if (cmd.format == Format::json) {
            json doc = document("verify", UnitSystem::natural());
            doc["profile"] = cmd.options.profile == VerifyProfile::quick ? "quick" : "standard";
            doc["passed"] = report.passed();
            doc["checks"] = json::array();
            for (const auto& c : report.checks) {
                doc["checks"].push_back({{"suite", c.suite},
                                         {"name", c.name},
                                         {"measured", number(c.measured)},
                                         {"bound", c.bound},
                                         {"passed", c.passed},
                                         {"detail", c.detail}});
            }
            out << doc.dump(2) << '\n';
        } else {
            for (const auto& c : report.checks) {
                out << (c.passed ? "[PASS] " : "[FAIL] ") << c.suite << '/' << c.name
                    << "  measured=" << human(c.measured) << "  bound=" << human(c.bound);
                if (!c.detail.empty()) out << "  (" << c.detail << ')';
                out << '\n';
            }
            out << "verify: " << report.checks.size() << " checks, " << report.failures()
                << " failed\n";
        }
        return report.passed() ? kSuccess : kCheckFailure;
    });
}

int run_force_command(const ForceCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, "force", [&] {
        const double lambda = cmd.lambda.value_or(0.05 * cmd.a);
        const ReportRow row = evaluate_row(cmd.a, lambda, cmd.route, cmd.units, cmd.tol);
        if (row.error) {
            err << "force: " << *row.error << '\n';
            return row.error_exit;
        }

        std::optional<FiniteExtraction> extraction;
        if (cmd.extract) {
            extraction = extract_finite_part(cmd.a, default_lambda_grid(cmd.a), cmd.units);
        }
        const double casimir = casimir_closed_form(cmd.a, cmd.units);

        if (cmd.format == Format::json) {
            json doc = document("force", cmd.units);
            doc["row"] = row_json(row);
            doc["casimir_closed_form"] = casimir;
            doc["orientation"] = "attractive";
            if (extraction) {
                doc["extraction"] = {{"divergent_coefficient", extraction->parts.divergent_coefficient},
                                     {"finite_part", extraction->parts.finite_part},
                                     {"finite_part_magnitude", std::abs(extraction->parts.finite_part)},
                                     {"residual_norm", extraction->fit.residual_norm},
                                     {"condition_estimate", extraction->fit.condition_estimate}};
            }
            out << doc.dump(2) << '\n';
        } else if (cmd.format == Format::csv) {
            out << "# schema_version=" << kSchemaVersion << '\n' << kCsvHeader << '\n';
            row_csv(out, row);
        } else {
            human_line(out, "a", human(row.a));
            human_line(out, "lambda", human(row.lambda));
            human_line(out, "route", route_name(row.route));
            human_line(out, "units", std::string(cmd.units.name()));
            human_line(out, "force_per_area", human(row.force_per_area));
            human_line(out, "divergent_part", human(row.divergent_part));
            human_line(out, "finite_part", human(row.finite_part));
            human_line(out, "remainder", human(row.remainder));
            human_line(out, "error_estimate", human(row.error_estimate));
            if (extraction) {
                human_line(out, "extracted_divergent_coefficient",
                           human(extraction->parts.divergent_coefficient));
                human_line(out, "extracted_finite_part", human(extraction->parts.finite_part));
                human_line(out, "extracted_finite_part_magnitude",
                           human(std::abs(extraction->parts.finite_part)));
            }
            human_line(out, "casimir_closed_form_magnitude", human(casimir));
            human_line(out, "orientation", "attractive");
        }
        return kSuccess;
    });
}

int run_sweep_command(const SweepCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, "sweep", [&] {
        if (cmd.a_values.empty() || cmd.lambda_values.empty() || cmd.routes.empty()) {
            throw InvalidArgument("sweep needs nonempty a, lambda and route lists");
        }
        for (double l : cmd.lambda_values) {
            if (!(l > 0.0)) throw InvalidArgument("sweep lambda values must be positive");
        }

        struct Point {
            double a;
            double lambda;
            Route route;
        };
        std::vector<Point> points;
        for (double a : cmd.a_values)
            for (double l : cmd.lambda_values)
                for (Route r : cmd.routes) points.push_back({a, l, r});

        // Rows land in their input slot, so emission order is independent of scheduling.
        std::vector<ReportRow> rows(points.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++) {
                rows[i] = evaluate_row(points[i].a, points[i].lambda, points[i].route, cmd.units, cmd.tol);
            }
        };
        unsigned threads = cmd.threads ? cmd.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
            worker();
        }

        int status = kSuccess;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].error) {
                status = kCheckFailure;
                err << "sweep: row " << i << " (a=" << machine(rows[i].a)
                    << ", lambda=" << machine(rows[i].lambda) << ", route=" << route_name(rows[i].route)
                    << "): " << *rows[i].error << '\n';
            }
        }

        if (cmd.format == Format::json) {
            json doc = document("sweep", cmd.units);
            doc["rows"] = json::array();
            for (const auto& row : rows) doc["rows"].push_back(row_json(row));
            out << doc.dump(2) << '\n';
        } else {
            out << "# schema_version=" << kSchemaVersion << '\n' << kCsvHeader << '\n';
            for (const auto& row : rows) row_csv(out, row);
        }
        return status;
    });
}

int run_extract_command(const ExtractCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, "extract", [&] {
        std::vector<Regulator> grid;
        if (cmd.lambda_grid.empty()) {
            grid = default_lambda_grid(cmd.a);
        } else {
            for (double l : cmd.lambda_grid) grid.push_back({l});
        }
        const auto e = extract_finite_part(cmd.a, grid, cmd.units);
        const double casimir = casimir_closed_form(cmd.a, cmd.units);
        const double magnitude = std::abs(e.parts.finite_part);
        const double deviation = std::abs(magnitude - casimir) / casimir;
        const auto& c = e.fit.coefficients;

        if (cmd.format == Format::json) {
            json doc = document("extract", cmd.units);
            doc["a"] = cmd.a;
            doc["lambda_grid"] = json::array();
            for (const auto& s : e.samples) doc["lambda_grid"].push_back(s.x);
            doc["coefficients"] = {{"c_minus4", c[0]}, {"c0", c[1]}, {"c1", c[2]}, {"c2", c[3]}};
            doc["divergent_coefficient"] = e.parts.divergent_coefficient;
            doc["finite_part"] = e.parts.finite_part;
            doc["residual_norm"] = e.fit.residual_norm;
            doc["condition_estimate"] = e.fit.condition_estimate;
            doc["casimir_closed_form"] = casimir;
            doc["relative_deviation"] = deviation;
            out << doc.dump(2) << '\n';
        } else if (cmd.format == Format::csv) {
            out << "# schema_version=" << kSchemaVersion << '\n'
                << "a,c_minus4,c0,c1,c2,residual_norm,condition_estimate,casimir_closed_form,relative_deviation\n"
                << machine(cmd.a) << ',' << machine(c[0]) << ',' << machine(c[1]) << ','
                << machine(c[2]) << ',' << machine(c[3]) << ',' << machine(e.fit.residual_norm) << ','
                << machine(e.fit.condition_estimate) << ',' << machine(casimir) << ','
                << machine(deviation) << '\n';
        } else {
            human_line(out, "a", human(cmd.a));
            human_line(out, "units", std::string(cmd.units.name()));
            human_line(out, "grid_points", std::to_string(e.samples.size()));
            human_line(out, "c_minus4 (divergent coefficient)", human(c[0]));
            human_line(out, "c0 (finite part)", human(c[1]));
            human_line(out, "c1", human(c[2]));
            human_line(out, "c2", human(c[3]));
            human_line(out, "residual_norm", human(e.fit.residual_norm));
            human_line(out, "condition_estimate", human(e.fit.condition_estimate));
            human_line(out, "casimir_closed_form", human(casimir));
            human_line(out, "relative_deviation", human(deviation));
        }
        return kSuccess;
    });
}

int run_modes_command(const ModesCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, "modes", [&] {
        if (cmd.n_max < 1) throw InvalidArgument("modes needs n_max >= 1");
        validate(cmd.geom);

        json doc = document("modes", cmd.units);
        doc["L"] = cmd.geom.L;
        doc["a"] = cmd.geom.a;
        doc["rows"] = json::array();
        if (cmd.format != Format::json) {
            out << "# schema_version=" << kSchemaVersion << '\n'
                << "n_x,n_y,n_z,kappa,k_z,k,sigma_zz,sigma_zz_magnitude" << (cmd.direct ? ",sigma_zz_direct" : "")
                << '\n';
        }
        for (int nx = 1; nx <= cmd.n_max; ++nx)
            for (int ny = 1; ny <= cmd.n_max; ++ny)
                for (int nz = 1; nz <= cmd.n_max; ++nz) {
                    const ModeIndex mode{nx, ny, nz};
                    const auto wv = wave_vector(mode, cmd.geom);
                    const auto s = sigma_zz_mode(mode, cmd.geom, cmd.units);
                    const double direct =
                        cmd.direct ? sigma_zz_direct(mode, cmd.geom, cmd.units, cmd.tolerance).sigma_zz : kNaN;
                    if (cmd.format == Format::json) {
                        json row = {{"n_x", nx}, {"n_y", ny}, {"n_z", nz}, {"kappa", wv.kappa}, {"k_z", wv.kz},
                                    {"k", wv.k}, {"sigma_zz", s.sigma_zz}, {"sigma_zz_magnitude", std::abs(s.sigma_zz)}};
                        if (cmd.direct) row["sigma_zz_direct"] = direct;
                        doc["rows"].push_back(row);
                    } else {
                        out << nx << ',' << ny << ',' << nz << ',' << machine(wv.kappa) << ',' << machine(wv.kz)
                            << ',' << machine(wv.k) << ',' << machine(s.sigma_zz) << ','
                            << machine(std::abs(s.sigma_zz));
                        if (cmd.direct) out << ',' << machine(direct);
                        out << '\n';
                    }
                }
        if (cmd.format == Format::json) out << doc.dump(2) << '\n';
        return kSuccess;
    });
}

}  // namespace casimir::cli
