// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/regsum.hpp"
#include "casimir/stress.hpp"
#include "casimir/verify.hpp"

using namespace casimir;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("[%s] %d %s: %s; %.3f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                seconds, budget_s);
    std::fflush(stdout);
}

const UnitSystem natural = UnitSystem::natural();

}  // namespace

int main() {
    run(1, "finite part and divergent coefficient at a=1", 1.0, [] {
        const auto grid = default_lambda_grid(1.0);
        const auto e = extract_finite_part(1.0, grid, natural);
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const double fp = rel(std::abs(e.parts.finite_part), pi2 / 240.0);
        const double dc = rel(e.parts.divergent_coefficient, -1.0 / pi2);
        return Outcome{fp < 1e-4 && dc < 1e-6,
                       fmt("|finite| rel err %.3g (< 1e-4), divergent rel err %.3g (< 1e-6)", fp, dc)};
    });

    run(2, "numeric sum, per-n sum and closed form agree", 10.0, [] {
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0}) {
            for (double x : {0.05, 0.1, 0.5, 1.0}) {
                const Regulator reg{x * a / std::numbers::pi};
                const double numeric = force_sum_numeric(a, reg, 10'000'000, 1e-11, natural).value;
                const double per_n = per_n_sum(a, reg, 1e-13, natural).value;
                const double closed = force_closed_form(a, reg, natural).value;
                worst = std::max({worst, rel(numeric, closed), rel(per_n, closed), rel(numeric, per_n)});
            }
        }
        return Outcome{worst < 1e-8, fmt("worst pairwise rel diff %.3g (< 1e-8) over 12 points", worst)};
    });

    run(3, "exact Bernoulli numbers and the h=4 term", 1.0, [] {
        const auto table = bernoulli_numbers(8);
        const bool exact = table[0] == Rational(1) && table[1] == Rational(-1, 2) && table[2] == Rational(1, 6) &&
                           table[3] == Rational(0) && table[4] == Rational(-1, 30);
        const Rational c4 = series_rational_coefficient(table, 4);
        const Rational combination = -Rational(6) / (2 * 24) * table[4];
        const bool rational_ok = c4 == combination && c4 == Rational(1, 240);
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0}) {
            const auto terms = series_terms(a, Regulator{0.05 * a}, 5, natural);
            const auto it = std::find_if(terms.begin(), terms.end(), [](const SeriesTerm& t) { return t.h == 4; });
            if (it == terms.end()) return Outcome{false, "no h=4 term"};
            worst = std::max(worst, rel(std::abs(it->value), casimir_closed_form(a, natural)));
        }
        return Outcome{exact && rational_ok && worst < 1e-14,
                       std::string("B0..B4 ") + (exact ? "exact" : "WRONG") + ", h=4 coefficient " +
                           (rational_ok ? "== 6/(2*4!)*(-B4) == 1/240" : "MISMATCH") +
                           fmt(", |term| vs pi^2/(240 a^4) rel err %.3g", worst)};
    });

    run(4, "a^-4 scaling of the finite part", 5.0, [] {
        std::vector<double> la, lf, dcs;
        for (double a : {0.5, 0.75, 1.0, 1.5, 2.0}) {
            const auto grid = default_lambda_grid(a);
            const auto e = extract_finite_part(a, grid, natural);
            la.push_back(std::log(a));
            lf.push_back(std::log(std::abs(e.parts.finite_part)));
            dcs.push_back(e.parts.divergent_coefficient);
        }
        const double n = static_cast<double>(la.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < la.size(); ++i) {
            sx += la[i];
            sy += lf[i];
            sxx += la[i] * la[i];
            sxy += la[i] * lf[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const auto [lo, hi] = std::minmax_element(dcs.begin(), dcs.end());
        const double spread = (*hi - *lo) / std::abs(dcs.front());
        return Outcome{std::abs(slope + 4.0) <= 0.01 && spread < 1e-6,
                       fmt("log-log slope %.6f (-4 +- 0.01), divergent coefficient spread %.3g (< 1e-6)", slope,
                           spread)};
    });

    run(5, "plate quadrature of the full stress tensor vs per-mode closed form", 30.0, [] {
        double worst = 0.0;
        int count = 0;
        for (const CavityGeometry geom : {CavityGeometry{1.0, 1.0}, CavityGeometry{0.7, 2.0}}) {
            for (int nx = 1; nx <= 3; ++nx)
                for (int ny = 1; ny <= 3; ++ny)
                    for (int nz = 1; nz <= 3; ++nz) {
                        const ModeIndex m{nx, ny, nz};
                        const double closed = sigma_zz_mode(m, geom, natural).sigma_zz;
                        const double direct = sigma_zz_direct(m, geom, natural, 1e-12).sigma_zz;
                        worst = std::max(worst, rel(direct, closed));
                        ++count;
                    }
        }
        return Outcome{worst < 1e-8, fmt("worst rel diff %.3g (< 1e-8) over %.0f modes", worst, count)};
    });

    run(6, "field invariant suite (verify, standard profile)", 60.0, [] {
        const auto report = run_verify({VerifyProfile::standard, 1.0});
        std::string detail = fmt("%.0f/%.0f checks pass", static_cast<double>(report.checks.size() - report.failures()),
                                 static_cast<double>(report.checks.size()));
        for (const auto& c : report.checks) {
            if (!c.passed) detail += "; failed " + c.suite + "/" + c.name;
        }
        return Outcome{report.passed(), detail + (report.passed() ? "; exit 0" : "; exit 1")};
    });

    run(7, "SI pressure at a = 1 um", 1.0, [] {
        const UnitSystem si = UnitSystem::si();
        const double a = 1e-6;
        const auto grid = default_lambda_grid(a);
        const auto e = extract_finite_part(a, grid, si);
        const double extracted = std::abs(e.parts.finite_part);
        const double closed = casimir_closed_form(a, si);
        const double r = std::max(rel(extracted, 1.30e-3), rel(closed, 1.30e-3));
        return Outcome{r < 0.01, fmt("extracted %.6g Pa, closed form %.6g Pa, worst rel to 1.30e-3 %.3g (< 0.01)",
                                     extracted, closed, r)};
    });

    std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
