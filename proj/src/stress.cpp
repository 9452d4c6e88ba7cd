#include "casimir/stress.hpp"

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"

namespace casimir {

StressTensor stress_tensor(const Vec3& E, const Vec3& B, const UnitSystem& units) {
    const double inv_mu0 = 1.0 / units.mu_0();
    const double e2 = E[0] * E[0] + E[1] * E[1] + E[2] * E[2];
    const double b2 = B[0] * B[0] + B[1] * B[1] + B[2] * B[2];
    const double isotropic = 0.5 * (units.epsilon_0 * e2 + inv_mu0 * b2);

    StressTensor t;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            double v = units.epsilon_0 * E[i] * E[j] + inv_mu0 * B[i] * B[j];
            if (i == j) {
                v -= isotropic;
            }
            t.m[i][j] = v;
            t.m[j][i] = v;
        }
    }
    return t;
}

ModeStress sigma_zz_mode(const ModeIndex& mode, const CavityGeometry& geom,
                         const UnitSystem& units) {
    const WaveVector wv = wave_vector(mode, geom);
    const double area_height = geom.L * geom.L * geom.a;
    const double sigma = -0.25 * units.hbar_c / area_height * (wv.kz * wv.kz) / wv.k;
    return {mode, wv.kappa, sigma, 0.0};
}

double sigma_zz_from_averages(const WaveVector& wv, const ModeAmplitudes& amp,
                              const UnitSystem& units) {
    const double e_z2 = mean_square_E(wv, amp, Region::lower_plate);
    // Only E_z survives on the plate, so <|E|^2> = <E_z^2> there.
    const double e2 = e_z2;
    const double b2 = mean_square_B_boundary(wv, amp, units);
    return units.epsilon_0 * e_z2 - 0.5 * (units.epsilon_0 * e2 + b2 / units.mu_0());
}

ModeStress sigma_zz_direct(const ModeIndex& mode, const CavityGeometry& geom,
                           const UnitSystem& units, double tol, double mixing, Region plate) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("stress quadrature tolerance must be positive");
    }
    if (plate == Region::bulk) {
        throw InvalidArgument("direct stress is evaluated on a plate, not in the bulk");
    }
    const WaveVector wv = wave_vector(mode, geom);
    const ModeAmplitudes amp = normalized_amplitudes(mode, geom, units, mixing);
    const double omega = angular_frequency(wv, units);
    const double z = plate == Region::lower_plate ? 0.0 : geom.a;

    auto integrand = [&](double x, double y) {
        const Vec3 p = {x, y, z};
        const Vec3 E = electric_mode_at(p, wv, amp);
        const Vec3 B = magnetic_mode_at(p, wv, amp, omega);
        return stress_tensor(E, B, units)(2, 2);
    };
    const auto q = numerics::integrate_rectangle(integrand, {0.0, geom.L}, {0.0, geom.L}, tol);
    const double area = geom.L * geom.L;
    return {mode, wv.kappa, q.value / area, q.error_estimate / area};
}

}  // namespace casimir
