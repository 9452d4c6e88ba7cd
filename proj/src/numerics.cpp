#include "casimir/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir::numerics {
namespace {

// QUADPACK qk21 abscissae and weights. Odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208938019766, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double f_center = f(center);
    double kronrod = kKronrodWeights[10] * f_center;
    double gauss = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

bool converged(double value, double error, double tol) {
    return error <= std::max(tol * std::abs(value), kAbsoluteFloor);
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                                    double tol, std::size_t max_panels) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("quadrature tolerance must be positive");
    }
    if (lo == hi) {
        return {};
    }

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod(f, lo, hi);
    double value = first.value;
    double error = first.error;
    std::size_t evaluations = 21;
    panels.push(first);

    while (!converged(value, error, tol)) {
        if (panels.size() >= max_panels) {
            std::ostringstream msg;
            msg << "adaptive quadrature exhausted " << max_panels << " panels (estimate " << value
                << ", error " << error << ")";
            throw NumericalFailure(msg.str(), value, error);
        }
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Panel at machine resolution; nothing left to refine.
            std::ostringstream msg;
            msg << "adaptive quadrature hit machine resolution (estimate " << value << ", error "
                << error << ")";
            throw NumericalFailure(msg.str(), value, error);
        }
        panels.pop();
        const Panel left = gauss_kronrod(f, worst.lo, mid);
        const Panel right = gauss_kronrod(f, mid, worst.hi);
        evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-add from scratch: the running sums drift by rounding after many updates.
    value = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {value, error, evaluations};
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double tol,
                                         double scale, std::size_t max_panels) {
    if (!(scale > 0.0)) {
        throw InvalidArgument("semi-infinite quadrature scale must be positive");
    }
    auto mapped = [&f, scale](double u) {
        const double x = scale * (1.0 - u) / u;
        if (!std::isfinite(x)) {
            return 0.0;
        }
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * scale / (u * u);
    };
    return integrate_interval(mapped, 0.0, 1.0, tol, max_panels);
}

QuadratureResult integrate_rectangle(const std::function<double(double, double)>& f,
                                     std::array<double, 2> x_range, std::array<double, 2> y_range,
                                     double tol) {
    const double inner_tol = 0.1 * tol;
    std::size_t evaluations = 0;
    double inner_error_peak = 0.0;

    auto outer = [&](double x) {
        const auto inner =
            integrate_interval([&](double y) { return f(x, y); }, y_range[0], y_range[1], inner_tol);
        evaluations += inner.evaluations;
        inner_error_peak = std::max(inner_error_peak, inner.error_estimate);
        return inner.value;
    };
    const auto result = integrate_interval(outer, x_range[0], x_range[1], tol);
    const double width = std::abs(x_range[1] - x_range[0]);
    return {result.value, result.error_estimate + width * inner_error_peak, evaluations};
}

QuadratureResult integrate_box(const std::function<double(const Vec3&)>& f, const Vec3& lower,
                               const Vec3& upper, double tol) {
    std::size_t evaluations = 0;
    double inner_error_peak = 0.0;

    auto outer = [&](double x) {
        const auto plane = integrate_rectangle(
            [&](double y, double z) { return f({x, y, z}); }, {lower[1], upper[1]},
            {lower[2], upper[2]}, 0.1 * tol);
        evaluations += plane.evaluations;
        inner_error_peak = std::max(inner_error_peak, plane.error_estimate);
        return plane.value;
    };
    const auto result = integrate_interval(outer, lower[0], upper[0], tol);
    const double width = std::abs(upper[0] - lower[0]);
    return {result.value, result.error_estimate + width * inner_error_peak, evaluations};
}

SeriesSum sum_until_tail_bound(const std::function<double(std::size_t)>& term,
                               const std::function<double(std::size_t)>& tail_bound, double tol,
                               std::size_t max_terms) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("series tolerance must be positive");
    }
    double sum = 0.0;
    double compensation = 0.0;  // Kahan
    for (std::size_t n = 1; n <= max_terms; ++n) {
        const double y = term(n) - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;

        const double tail = std::abs(tail_bound(n));
        if (tail <= std::max(tol * std::abs(sum), kAbsoluteFloor)) {
            return {sum, tail, n};
        }
    }
    const double tail = std::abs(tail_bound(max_terms));
    std::ostringstream msg;
    msg << "series tail bound " << tail << " not below tolerance after " << max_terms << " terms";
    throw NumericalFailure(msg.str(), sum, tail);
}

FitResult fit_linear_basis(std::span<const Sample> samples, std::span<const double> basis_exponents,
                           double max_condition) {
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(basis_exponents.size());
    if (cols == 0) {
        throw InvalidArgument("fit basis is empty");
    }
    if (rows < cols) {
        throw InvalidArgument("fit needs at least as many samples as basis functions");
    }

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double e = basis_exponents[static_cast<std::size_t>(j)];
            if (e < 0.0 && !(s.x > 0.0)) {
                throw InvalidArgument("negative basis exponent needs x > 0");
            }
            design(i, j) = std::pow(s.x, e);
        }
        rhs(i) = s.y;
    }

    Eigen::VectorXd column_scale = design.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (!(column_scale(j) > 0.0) || !std::isfinite(column_scale(j))) {
            throw IllConditioned("fit basis column vanishes or overflows on the samples",
                                 std::numeric_limits<double>::infinity());
        }
    }
    const Eigen::MatrixXd scaled = design * column_scale.cwiseInverse().asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                     : std::numeric_limits<double>::infinity();
    if (condition > max_condition) {
        std::ostringstream msg;
        msg << "fit design matrix ill-conditioned (condition estimate " << condition << " > "
            << max_condition << ")";
        throw IllConditioned(msg.str(), condition);
    }

    const Eigen::VectorXd scaled_coeffs = svd.solve(rhs);
    const Eigen::VectorXd coeffs = scaled_coeffs.cwiseQuotient(column_scale);

    FitResult fit;
    fit.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
    fit.residual_norm = (scaled * scaled_coeffs - rhs).norm();
    fit.condition_estimate = condition;
    return fit;
}

double central_difference(const std::function<double(const Vec3&)>& f, const Vec3& point,
                          std::size_t axis, double step) {
    if (!(step > 0.0)) {
        throw InvalidArgument("finite-difference step must be positive");
    }
    if (axis > 2) {
        throw InvalidArgument("axis must be 0, 1 or 2");
    }
    Vec3 forward = point;
    Vec3 backward = point;
    forward[axis] += step;
    backward[axis] -= step;
    return (f(forward) - f(backward)) / (2.0 * step);
}

}  // namespace casimir::numerics
