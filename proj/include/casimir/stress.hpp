#pragma once

#include <array>
#include <cstddef>

#include "casimir/cavity_modes.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Symmetric 3x3 Maxwell stress tensor (pressure units).
struct StressTensor {
    std::array<std::array<double, 3>, 3> m{};

    double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
};

/// Plate-averaged normal stress of one cavity mode. Negative means the
/// plates are pulled together.
struct ModeStress {
    ModeIndex mode;
    double kappa = 0.0;
    double sigma_zz = 0.0;
    double error_estimate = 0.0;  // zero for the closed form
};

/// sigma_ij = eps0 E_i E_j + B_i B_j / mu0 - (eps0 |E|^2 + |B|^2 / mu0) delta_ij / 2
StressTensor stress_tensor(const Vec3& E, const Vec3& B, const UnitSystem& units);

/// Closed form sigma_zz = -(1/4) hbar c kz^2 / (k L^2 a), the zero-point
/// normalized amplitude inserted into the plate-averaged stress.
ModeStress sigma_zz_mode(const ModeIndex& mode, const CavityGeometry& geom,
                         const UnitSystem& units);

/// sigma_zz assembled from the reduced plate averages
///   eps0 <E_z^2> - (eps0 <|E|^2> + <|B|^2>/mu0) / 2
/// for an arbitrary transversal amplitude. The A_z^2 pieces cancel and the
/// result is -eps0 A^2 kz^2 / (8 k^2).
double sigma_zz_from_averages(const WaveVector& wv, const ModeAmplitudes& amp,
                              const UnitSystem& units);

/// Independent route: samples E and B on a plate, builds the full tensor
/// pointwise and averages sigma_zz over the plate by adaptive 2-D
/// quadrature. `mixing` selects the transversal amplitude direction
/// (see transverse_amplitudes); the result must not depend on it.
ModeStress sigma_zz_direct(const ModeIndex& mode, const CavityGeometry& geom,
                           const UnitSystem& units, double tol, double mixing = 0.0,
                           Region plate = Region::lower_plate);

}  // namespace casimir
