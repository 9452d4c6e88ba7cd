#pragma once

#include <string_view>

namespace casimir {

enum class UnitMode { natural, si };

/// Physical constants used by the field and force routines.
///
/// Natural units fix hbar = c = eps0 = 1, so force per area carries
/// dimension length^-4 and lengths are in whatever unit the caller chose.
/// In SI, lengths are meters and force per area comes out in pascals.
struct UnitSystem {
    UnitMode mode = UnitMode::natural;
    double hbar_c = 1.0;     // J*m in SI
    double epsilon_0 = 1.0;  // F/m in SI
    double c = 1.0;          // m/s in SI

    static constexpr UnitSystem natural() { return {}; }

    // CODATA 2018: hbar = 1.054571817e-34 J*s (exact c), eps0 = 8.8541878128e-12 F/m.
    static constexpr UnitSystem si() {
        return {UnitMode::si, 1.054571817e-34 * 299792458.0, 8.8541878128e-12, 299792458.0};
    }

    constexpr double mu_0() const { return 1.0 / (epsilon_0 * c * c); }
    constexpr double hbar() const { return hbar_c / c; }

    constexpr std::string_view name() const { return mode == UnitMode::natural ? "natural" : "si"; }
};

}  // namespace casimir
