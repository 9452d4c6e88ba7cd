#include "casimir/cavity_modes.hpp"

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

using std::numbers::pi;

namespace {

struct Trig {
    double s;
    double c;
};

Trig axis_phase(const WaveVector& wv, std::size_t axis, double coord) {
    if (wv.n[axis] > 0) {
        const double half_waves = wv.n[axis] * (coord / wv.box[axis]);
        return {boost::math::sin_pi(half_waves), boost::math::cos_pi(half_waves)};
    }
    const double k = axis == 0 ? wv.kx : (axis == 1 ? wv.ky : wv.kz);
    return {std::sin(k * coord), std::cos(k * coord)};
}

}  // namespace

WaveVector WaveVector::from_components(double kx, double ky, double kz) {
    WaveVector wv;
    wv.kx = kx;
    wv.ky = ky;
    wv.kz = kz;
    wv.kappa = std::hypot(kx, ky);
    wv.k = std::hypot(wv.kappa, kz);
    return wv;
}

void validate(const ModeIndex& mode) {
    if (mode.nx < 1 || mode.ny < 1 || mode.nz < 1) {
        std::ostringstream msg;
        msg << "mode numbers must be >= 1, got (" << mode.nx << ", " << mode.ny << ", " << mode.nz
            << ")";
        throw InvalidArgument(msg.str());
    }
}

void validate(const CavityGeometry& geom) {
    if (!(geom.a > 0.0) || !(geom.L > 0.0) || !std::isfinite(geom.a) || !std::isfinite(geom.L)) {
        throw InvalidArgument("cavity geometry needs a > 0 and L > 0");
    }
}

WaveVector wave_vector(const ModeIndex& mode, const CavityGeometry& geom) {
    validate(mode);
    validate(geom);
    WaveVector wv = WaveVector::from_components(pi * mode.nx / geom.L, pi * mode.ny / geom.L,
                                                pi * mode.nz / geom.a);
    wv.n = {mode.nx, mode.ny, mode.nz};
    wv.box = {geom.L, geom.L, geom.a};
    return wv;
}

double angular_frequency(const WaveVector& wv, const UnitSystem& units) { return units.c * wv.k; }

Vec3 electric_mode_at(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp) {
    const auto [sx, cx] = axis_phase(wv, 0, point[0]);
    const auto [sy, cy] = axis_phase(wv, 1, point[1]);
    const auto [sz, cz] = axis_phase(wv, 2, point[2]);
    return {amp.Ax * cx * sy * sz, amp.Ay * sx * cy * sz, amp.Az * sx * sy * cz};
}

Vec3 magnetic_mode_at(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp,
                      double omega) {
    if (omega == 0.0 || !std::isfinite(omega)) {
        throw InvalidArgument("magnetic field needs a nonzero finite angular frequency");
    }
    const auto [sx, cx] = axis_phase(wv, 0, point[0]);
    const auto [sy, cy] = axis_phase(wv, 1, point[1]);
    const auto [sz, cz] = axis_phase(wv, 2, point[2]);

    const double curl_x = (amp.Az * wv.ky - amp.Ay * wv.kz) * sx * cy * cz;
    const double curl_y = -(amp.Az * wv.kx - amp.Ax * wv.kz) * cx * sy * cz;
    const double curl_z = (amp.Ay * wv.kx - amp.Ax * wv.ky) * cx * cy * sz;
    return {curl_x / omega, curl_y / omega, curl_z / omega};
}

double transversality_residual(const ModeAmplitudes& amp, const WaveVector& wv) {
    return amp.Ax * wv.kx + amp.Ay * wv.ky + amp.Az * wv.kz;
}

double divergence_residual(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp,
                           double step) {
    double div = 0.0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        div += numerics::central_difference(
            [&](const Vec3& p) { return electric_mode_at(p, wv, amp)[axis]; }, point, axis, step);
    }
    return div;
}

double amplitude_norm_squared(const ModeIndex& mode, const CavityGeometry& geom,
                              const UnitSystem& units) {
    const WaveVector wv = wave_vector(mode, geom);
    const double hbar_omega = units.hbar() * angular_frequency(wv, units);
    return 2.0 * hbar_omega / (units.epsilon_0 * geom.L * geom.L * geom.a);
}

ModeAmplitudes transverse_amplitudes(const WaveVector& wv, double norm_squared, double mixing) {
    if (!(norm_squared >= 0.0)) {
        throw InvalidArgument("amplitude norm must be nonnegative");
    }
    // kappa >= pi/L > 0 for every valid mode, so e1 is well defined.
    const double e1_norm = wv.kappa;
    const Vec3 e1 = {wv.ky / e1_norm, -wv.kx / e1_norm, 0.0};
    const double e2_norm = wv.kappa * wv.k;
    const Vec3 e2 = {wv.kx * wv.kz / e2_norm, wv.ky * wv.kz / e2_norm,
                     -wv.kappa * wv.kappa / e2_norm};

    const double scale = std::sqrt(norm_squared);
    const double c = std::cos(mixing);
    const double s = std::sin(mixing);
    return {scale * (c * e1[0] + s * e2[0]), scale * (c * e1[1] + s * e2[1]),
            scale * (c * e1[2] + s * e2[2])};
}

ModeAmplitudes normalized_amplitudes(const ModeIndex& mode, const CavityGeometry& geom,
                                     const UnitSystem& units, double mixing) {
    return transverse_amplitudes(wave_vector(mode, geom), amplitude_norm_squared(mode, geom, units),
                                 mixing);
}

double mean_square_E(const WaveVector&, const ModeAmplitudes& amp, Region region) {
    switch (region) {
        case Region::bulk:
            return amp.norm_squared() / 8.0;
        case Region::lower_plate:
        case Region::upper_plate:
            return amp.Az * amp.Az / 4.0;
    }
    return 0.0;
}

double mean_square_B_boundary(const WaveVector& wv, const ModeAmplitudes& amp,
                              const UnitSystem& units) {
    const double residual = transversality_residual(amp, wv);
    const double scale = std::sqrt(amp.norm_squared()) * wv.k;
    if (std::abs(residual) > kTransversalityTolerance * scale) {
        std::ostringstream msg;
        msg << "plate-averaged |B|^2 closed form needs A.k = 0 (residual " << residual << ")";
        throw InvalidArgument(msg.str());
    }
    const double kz_ratio = (wv.kz * wv.kz) / (wv.k * wv.k);
    return (amp.Az * amp.Az + amp.norm_squared() * kz_ratio) / (4.0 * units.c * units.c);
}

}  // namespace casimir
