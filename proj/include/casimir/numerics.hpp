#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace casimir {

using Vec3 = std::array<double, 3>;

namespace numerics {

/// Integrals below this magnitude are accepted on absolute error.
inline constexpr double kAbsoluteFloor = 1e-30;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |Kronrod - Gauss| summed over panels
    std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (10/21) on [lo, hi]. Panels are bisected largest
/// error first until the summed estimate drops below max(tol*|value|, floor).
/// Throws NumericalFailure with the best estimate if max_panels is reached.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                                    double tol, std::size_t max_panels = 4000);

/// Integral over [0, inf) for exponentially decaying integrands, mapped to
/// (0, 1] by x = scale*(1-u)/u. `scale` should be of the order of the decay
/// length; adaptivity covers a poor choice at the price of evaluations.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double tol,
                                         double scale = 1.0, std::size_t max_panels = 4000);

/// Nested adaptive quadrature over the rectangle [x0,x1] x [y0,y1].
QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f,
                                     std::array<double, 2> x_range, std::array<double, 2> y_range,
                                     double tol);

/// Nested adaptive quadrature over an axis-aligned box.
QuadratureResult integrate_box(const std::function<double(const Vec3&)>& f, const Vec3& lower,
                               const Vec3& upper, double tol);

struct SeriesSum {
    double value = 0.0;
    double tail_bound = 0.0;  // caller-supplied bound on the omitted terms
    std::size_t terms = 0;
};

/// Sums term(1) + term(2) + ... and stops at the first n where
/// tail_bound(n) >= |sum_{m>n} term(m)| is below max(tol*|partial|, floor).
SeriesSum sum_until_tail_bound(const std::function<double(std::size_t)>& term,
                               const std::function<double(std::size_t)>& tail_bound, double tol,
                               std::size_t max_terms = 10'000'000);

struct Sample {
    double x = 0.0;
    double y = 0.0;
};

struct FitResult {
    std::vector<double> coefficients;  // one per basis exponent, same order
    double residual_norm = 0.0;
    double condition_estimate = 1.0;  // of the column-equilibrated design matrix
};

inline constexpr double kDefaultMaxCondition = 1e6;

/// Least squares y ~ sum_j c_j x^{e_j} through an SVD of the design matrix
/// after scaling every column to unit norm. Throws IllConditioned when the
/// condition estimate exceeds max_condition.
FitResult fit_linear_basis(std::span<const Sample> samples, std::span<const double> basis_exponents,
                           double max_condition = kDefaultMaxCondition);

/// (f(p + h e_axis) - f(p - h e_axis)) / 2h.
double central_difference(const std::function<double(const Vec3&)>& f, const Vec3& point,
                          std::size_t axis, double step);

}  // namespace numerics
}  // namespace casimir
