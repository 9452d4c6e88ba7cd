#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside an operation's domain (nonpositive lengths, bad mode numbers, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not meet its contract. Always carries the best
/// estimate reached and an error bound for it.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Least-squares design matrix too close to rank deficient.
class IllConditioned : public std::runtime_error {
public:
    IllConditioned(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

/// Closed-form evaluation where the regulator is so small that the finite
/// part is below double precision relative to the divergent part.
class PrecisionLoss : public std::runtime_error {
public:
    PrecisionLoss(const std::string& what, double reduced_regulator)
        : std::runtime_error(what), reduced_regulator_(reduced_regulator) {}

    double reduced_regulator() const noexcept { return reduced_regulator_; }

private:
    double reduced_regulator_;
};

}  // namespace casimir
