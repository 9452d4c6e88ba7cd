#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <vector>

#include "casimir/numerics.hpp"
#include "casimir/units.hpp"

namespace casimir {

using Rational = boost::multiprecision::cpp_rational;

/// Exponential cutoff e^{-lambda k}; lambda is a length and must be > 0.
struct Regulator {
    double lambda = 1.0;
};

/// F(lambda) = divergent_coefficient * lambda^-4 + finite_part + remainder.
/// All forces are per unit plate area.
struct RegularizedForce {
    double total = 0.0;
    double divergent_coefficient = 0.0;
    double finite_part = 0.0;
    double remainder = 0.0;

    double divergent_part(const Regulator& reg) const;
};

/// A force value together with the bound the producing route commits to.
struct ForceEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms = 0;  // modes or series terms used
};

/// Exact Bernoulli numbers B_0..B_hmax with B_1 = -1/2, i.e. the
/// coefficients of x/(e^x - 1) = sum B_h x^h / h!.
class BernoulliTable {
public:
    explicit BernoulliTable(std::size_t h_max);

    std::size_t h_max() const { return values_.size() - 1; }
    const Rational& operator[](std::size_t h) const { return values_.at(h); }
    double as_double(std::size_t h) const;

private:
    std::vector<Rational> values_;
};

BernoulliTable bernoulli_numbers(std::size_t h_max);

/// lambda * pi / a; the only combination the regularized sum depends on.
double reduced_regulator(double a, const Regulator& reg);

/// Exact value of the kernel integral int_0^inf (z+1)^{-1/2} e^{-beta sqrt(z+1)} dz = (2/beta) e^{-beta}.
double kernel_integral_exact(double beta);

/// Same kernel by adaptive quadrature, with the constant e^{-beta} factored out
/// so large beta does not underflow: returns (value, error) of
///   int_0^inf (z+1)^{-1/2} e^{-beta (sqrt(z+1) - 1)} dz.
numerics::QuadratureResult kernel_integral_scaled(double beta, double tol);

/// Force per area of the n-th plate-normal mode family after the transverse
/// integral has been done exactly:
///   -(hbar c / 2 pi a) (n pi / a)^2 (1/lambda) e^{-lambda n pi / a}.
double per_n_term(double a, const Regulator& reg, int n, const UnitSystem& units);

/// sum_n per_n_term, stopped on the geometric tail bound.
ForceEstimate per_n_sum(double a, const Regulator& reg, double tol, const UnitSystem& units,
                        std::size_t n_max = 10'000'000);

/// Regularized mode sum evaluated numerically: for each n the transverse
/// d^2 kappa integral is done by quadrature in z = kappa^2 a^2/(n pi)^2, the
/// n series is truncated when the closed-form tail bound drops below tol.
/// Throws NumericalFailure if n_max is reached first.
ForceEstimate force_sum_numeric(double a, const Regulator& reg, std::size_t n_max, double tol,
                                const UnitSystem& units);

/// Geometric-series closed form
///   -(hbar c / 2 pi a) (1/lambda) (pi/a)^2 q (1+q) / (1-q)^3,  q = e^{-lambda pi/a}.
/// 1 - q is evaluated with expm1. Throws PrecisionLoss for lambda pi / a < 1e-8.
ForceEstimate force_closed_form(double a, const Regulator& reg, const UnitSystem& units);

inline constexpr double kMinReducedRegulator = 1e-8;

/// One term of the small-lambda expansion:
///   -(hbar c / 2 pi a) (B_h / h!) (-1)^h (pi/a)^{h-1} (h-1)(h-2) lambda^{h-4}
/// The rational factor -(1/2) B_h (-1)^h (h-1)(h-2) / h! is kept exact.
struct SeriesTerm {
    std::size_t h = 0;
    Rational rational_coefficient;  // multiplies hbar c pi^{h-2} a^{-h} lambda^{h-4}
    double value = 0.0;
};

Rational series_rational_coefficient(const BernoulliTable& table, std::size_t h);

std::vector<SeriesTerm> series_terms(double a, const Regulator& reg, std::size_t h_max,
                                     const UnitSystem& units);

/// Partial sum of series_terms through h_max. The error estimate is the
/// magnitude of the first omitted nonzero term. The expansion converges
/// only for lambda pi / a < 2 pi; outside that InvalidArgument is thrown.
ForceEstimate force_series(double a, const Regulator& reg, std::size_t h_max,
                           const UnitSystem& units);

/// Coefficients of the lambda -> 0 split from the h = 0 and h = 4 terms:
/// divergent_coefficient = -hbar c / pi^2 and finite_part = +hbar c pi^2 / (240 a^4)
/// (the literal sign of the h = 4 term). total and remainder are left zero.
RegularizedForce asymptotic_parts(double a, const UnitSystem& units);

/// Splits a computed total at regulator `reg` using asymptotic_parts.
RegularizedForce decompose(double a, const Regulator& reg, double total, const UnitSystem& units);

/// Basis exponents of the finite-part fit: lambda^-4, lambda^0, lambda^1, lambda^2.
inline constexpr std::array<double, 4> kFiniteFitExponents = {-4.0, 0.0, 1.0, 2.0};

struct FiniteExtraction {
    RegularizedForce parts;  // divergent_coefficient and finite_part from the fit
    numerics::FitResult fit;
    std::vector<numerics::Sample> samples;  // (lambda, F(lambda)) from the closed form
};

/// Fits F(lambda) = c_{-4} lambda^-4 + c_0 + c_1 lambda + c_2 lambda^2 to the
/// closed form on `lambda_grid`. Needs >= 4 distinct lambdas with
/// lambda pi / a in [0.01, 0.5]; IllConditioned when they are too clustered.
FiniteExtraction extract_finite_part(double a, std::span<const Regulator> lambda_grid,
                                     const UnitSystem& units,
                                     double max_condition = numerics::kDefaultMaxCondition);

/// Default grid lambda = {0.02, 0.04, 0.06, 0.08, 0.10} * a.
std::vector<Regulator> default_lambda_grid(double a);

/// Magnitude pi^2 hbar c / (240 a^4) of the attractive force per area.
double casimir_closed_form(double a, const UnitSystem& units);

}  // namespace casimir
