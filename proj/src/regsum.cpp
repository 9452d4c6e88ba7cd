#include "casimir/regsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

using std::numbers::pi;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_length(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidArgument("plate separation must be positive and finite");
    }
}

void check_regulator(const Regulator& reg) {
    if (!(reg.lambda > 0.0) || !std::isfinite(reg.lambda)) {
        throw InvalidArgument("regulator lambda must be positive and finite");
    }
}

// Bound on sum_{m>n} C m^2 q^m from the ratio of consecutive terms, which
// decreases in m: for m >= n+1 the ratio is at most ((n+2)/(n+1))^2 q.
double geometric_tail(double first_omitted, std::size_t n, double q) {
    const double growth = static_cast<double>(n + 2) / static_cast<double>(n + 1);
    const double ratio = growth * growth * q;
    if (ratio >= 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(first_omitted) / (1.0 - ratio);
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

double RegularizedForce::divergent_part(const Regulator& reg) const {
    return divergent_coefficient / std::pow(reg.lambda, 4);
}

BernoulliTable::BernoulliTable(std::size_t h_max) {
    values_.reserve(h_max + 1);
    values_.emplace_back(1);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
    for (std::size_t m = 1; m <= h_max; ++m) {
        Rational acc = 0;
        boost::multiprecision::cpp_int binom = 1;  // C(m+1, j)
        for (std::size_t j = 0; j < m; ++j) {
            acc += Rational(binom) * values_[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        values_.push_back(-acc / Rational(m + 1));
    }
}

double BernoulliTable::as_double(std::size_t h) const { return rational_to_double(values_.at(h)); }

BernoulliTable bernoulli_numbers(std::size_t h_max) {
    if (h_max < 4) {
        throw InvalidArgument("Bernoulli table needs h_max >= 4");
    }
    return BernoulliTable(h_max);
}

double reduced_regulator(double a, const Regulator& reg) {
    check_length(a);
    check_regulator(reg);
    return reg.lambda * pi / a;
}

double kernel_integral_exact(double beta) { return 2.0 / beta * std::exp(-beta); }

numerics::QuadratureResult kernel_integral_scaled(double beta, double tol) {
    if (!(beta > 0.0)) {
        throw InvalidArgument("kernel integral needs beta > 0");
    }
    auto integrand = [beta](double z) {
        const double root = std::sqrt(z + 1.0);
        const double excess = z / (root + 1.0);  // sqrt(z+1) - 1 without cancellation
        return std::exp(-beta * excess) / root;
    };
    const double decay_length = 2.0 / beta + 1.0 / (beta * beta);
    return numerics::integrate_semi_infinite(integrand, tol, decay_length);
}

double per_n_term(double a, const Regulator& reg, int n, const UnitSystem& units) {
    check_length(a);
    check_regulator(reg);
    if (n < 1) {
        throw InvalidArgument("mode number n must be >= 1");
    }
    const double kz = n * pi / a;
    return -units.hbar_c / (2.0 * pi * a) * kz * kz / reg.lambda * std::exp(-reg.lambda * kz);
}

ForceEstimate per_n_sum(double a, const Regulator& reg, double tol, const UnitSystem& units,
                        std::size_t n_max) {
    const double q = std::exp(-reduced_regulator(a, reg));
    auto term = [&](std::size_t n) { return per_n_term(a, reg, static_cast<int>(n), units); };
    auto tail = [&](std::size_t n) {
        return geometric_tail(per_n_term(a, reg, static_cast<int>(n + 1), units), n, q);
    };
    const auto sum = numerics::sum_until_tail_bound(term, tail, tol, n_max);
    // Compensated summation of same-sign terms.
    const double rounding = 4.0 * kEps * std::abs(sum.value);
    return {sum.value, sum.tail_bound + rounding, sum.terms};
}

ForceEstimate force_sum_numeric(double a, const Regulator& reg, std::size_t n_max, double tol,
                                const UnitSystem& units) {
    const double x = reduced_regulator(a, reg);
    const double q = std::exp(-x);
    const double prefactor = -units.hbar_c / (4.0 * pi * pi * a);
    const double quad_tol = 0.1 * tol;
    double quadrature_error = 0.0;

    // n-th family: integral over the transverse plane of
    //   kz^2 / k * e^{-lambda k},  k = sqrt(kappa^2 + kz^2),
    // with d^2 kappa = 2 pi kappa d kappa and kappa^2 = kz^2 z, i.e.
    // d^2 kappa = pi kz^2 dz. e^{-lambda kz} is pulled out of the integrand.
    auto term = [&](std::size_t n) {
        const double kz = static_cast<double>(n) * pi / a;
        const double beta = reg.lambda * kz;
        auto integrand = [kz, &reg](double z) {
            const double root = std::sqrt(z + 1.0);
            const double k = kz * root;
            const double k_excess = kz * z / (root + 1.0);  // k - kz
            return kz * kz / k * std::exp(-reg.lambda * k_excess);
        };
        const double decay_length = 2.0 / beta + 1.0 / (beta * beta);
        const auto transverse = numerics::integrate_semi_infinite(integrand, quad_tol, decay_length);
        const double weight = prefactor * pi * kz * kz * std::exp(-beta);
        quadrature_error += std::abs(weight) * transverse.error_estimate;
        return weight * transverse.value;
    };
    // Each term equals the exact per-n closed form, so its geometric tail bounds the rest.
    auto tail = [&](std::size_t n) {
        return geometric_tail(per_n_term(a, reg, static_cast<int>(n + 1), units), n, q);
    };

    const auto sum = numerics::sum_until_tail_bound(term, tail, tol, n_max);
    return {sum.value, sum.tail_bound + quadrature_error, sum.terms};
}

ForceEstimate force_closed_form(double a, const Regulator& reg, const UnitSystem& units) {
    const double x = reduced_regulator(a, reg);
    if (x < kMinReducedRegulator) {
        std::ostringstream msg;
        msg << "lambda pi / a = " << x << " below " << kMinReducedRegulator
            << ": finite part lost to rounding, use the series expansion";
        throw PrecisionLoss(msg.str(), x);
    }
    const double q = std::exp(-x);
    const double one_minus_q = -std::expm1(-x);
    const double geometric = q * (1.0 + q) / (one_minus_q * one_minus_q * one_minus_q);
    const double k1 = pi / a;
    const double value = -units.hbar_c / (2.0 * pi * a) / reg.lambda * k1 * k1 * geometric;
    return {value, 16.0 * kEps * std::abs(value), 0};
}

Rational series_rational_coefficient(const BernoulliTable& table, std::size_t h) {
    Rational factorial = 1;
    for (std::size_t i = 2; i <= h; ++i) {
        factorial *= i;
    }
    const long long hh = static_cast<long long>(h);
    const Rational sign = (h % 2 == 0) ? 1 : -1;
    return Rational(-1, 2) * table[h] * sign * Rational((hh - 1) * (hh - 2)) / factorial;
}

std::vector<SeriesTerm> series_terms(double a, const Regulator& reg, std::size_t h_max,
                                     const UnitSystem& units) {
    if (h_max < 5) {
        throw InvalidArgument("series expansion needs h_max >= 5");
    }
    const double x = reduced_regulator(a, reg);
    const BernoulliTable table(h_max);
    // hbar c pi^{h-2} a^{-h} lambda^{h-4} = hbar c x^h / (pi^2 lambda^4)
    const double base = units.hbar_c / (pi * pi * std::pow(reg.lambda, 4));

    std::vector<SeriesTerm> terms;
    terms.reserve(h_max + 1);
    double x_power = 1.0;
    for (std::size_t h = 0; h <= h_max; ++h) {
        Rational coefficient = series_rational_coefficient(table, h);
        const double value = rational_to_double(coefficient) * base * x_power;
        terms.push_back({h, std::move(coefficient), value});
        x_power *= x;
    }
    return terms;
}

ForceEstimate force_series(double a, const Regulator& reg, std::size_t h_max,
                           const UnitSystem& units) {
    const double x = reduced_regulator(a, reg);
    if (x >= 2.0 * pi) {
        std::ostringstream msg;
        msg << "series expansion diverges for lambda pi / a >= 2 pi (got " << x << ")";
        throw InvalidArgument(msg.str());
    }
    // Odd Bernoulli numbers past B_1 vanish, so the next nonzero term is at most two away.
    const auto terms = series_terms(a, reg, h_max + 2, units);
    double sum = 0.0;
    for (std::size_t h = 0; h <= h_max; ++h) {
        sum += terms[h].value;
    }
    double next = 0.0;
    for (std::size_t h = h_max + 1; h < terms.size() && next == 0.0; ++h) {
        next = terms[h].value;
    }
    return {sum, std::abs(next) + 4.0 * kEps * std::abs(sum), h_max + 1};
}

RegularizedForce asymptotic_parts(double a, const UnitSystem& units) {
    check_length(a);
    const BernoulliTable table(4);
    RegularizedForce parts;
    parts.divergent_coefficient =
        rational_to_double(series_rational_coefficient(table, 0)) * units.hbar_c / (pi * pi);
    parts.finite_part = rational_to_double(series_rational_coefficient(table, 4)) * units.hbar_c *
                        pi * pi / std::pow(a, 4);
    return parts;
}

RegularizedForce decompose(double a, const Regulator& reg, double total, const UnitSystem& units) {
    check_regulator(reg);
    RegularizedForce parts = asymptotic_parts(a, units);
    parts.total = total;
    parts.remainder = total - parts.divergent_part(reg) - parts.finite_part;
    return parts;
}

FiniteExtraction extract_finite_part(double a, std::span<const Regulator> lambda_grid,
                                     const UnitSystem& units, double max_condition) {
    check_length(a);
    std::set<double> distinct;
    for (const auto& reg : lambda_grid) {
        const double x = reduced_regulator(a, reg);
        if (x < 0.01 || x > 0.5) {
            std::ostringstream msg;
            msg << "lambda = " << reg.lambda << " gives lambda pi / a = " << x
                << ", outside the fit window [0.01, 0.5]";
            throw InvalidArgument(msg.str());
        }
        distinct.insert(reg.lambda);
    }
    if (distinct.size() < kFiniteFitExponents.size()) {
        throw InvalidArgument("finite-part fit needs at least 4 distinct lambda values");
    }

    FiniteExtraction out;
    out.samples.reserve(lambda_grid.size());
    for (const auto& reg : lambda_grid) {
        out.samples.push_back({reg.lambda, force_closed_form(a, reg, units).value});
    }
    out.fit = numerics::fit_linear_basis(out.samples, kFiniteFitExponents, max_condition);
    out.parts.divergent_coefficient = out.fit.coefficients[0];
    out.parts.finite_part = out.fit.coefficients[1];
    return out;
}

std::vector<Regulator> default_lambda_grid(double a) {
    check_length(a);
    return {{0.02 * a}, {0.04 * a}, {0.06 * a}, {0.08 * a}, {0.10 * a}};
}

double casimir_closed_form(double a, const UnitSystem& units) {
    check_length(a);
    return pi * pi * units.hbar_c / (240.0 * std::pow(a, 4));
}

}  // namespace casimir
