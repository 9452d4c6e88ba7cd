#pragma once

#include <string>
#include <vector>

namespace casimir {

/// Which mode grid and regulator grid the invariant suites sweep. Tolerances
/// are the same in every profile.
enum class VerifyProfile { standard, quick };

struct VerifyOptions {
    VerifyProfile profile = VerifyProfile::standard;
    // Test hook: multiplies the closed-form per-mode stress before it is
    // compared against the independent routes. 1.0 disables it.
    double sigma_fault_factor = 1.0;
};

struct CheckResult {
    std::string suite;
    std::string name;
    double measured = 0.0;  // worst residual over the sweep
    double bound = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    std::size_t failures() const;
};

/// Runs the invariant suites of cavity_modes, stress and regsum. Numerical
/// routine failures propagate as exceptions (NumericalFailure).
VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace casimir
