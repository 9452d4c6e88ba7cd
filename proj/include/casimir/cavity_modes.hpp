#pragma once

#include "casimir/numerics.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Cavity mode numbers; every component is >= 1.
struct ModeIndex {
    int nx = 1;
    int ny = 1;
    int nz = 1;

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Plates at z = 0 and z = a; L is the side of the square transverse
/// quantization box and drops out of every per-area quantity.
struct CavityGeometry {
    double a = 1.0;
    double L = 1.0;
};

struct WaveVector {
    double kx = 0.0;
    double ky = 0.0;
    double kz = 0.0;
    double k = 0.0;      // |k|
    double kappa = 0.0;  // transverse magnitude sqrt(kx^2 + ky^2)

    // Set by wave_vector(): mode numbers and box lengths (L, L, a). Phases are
    // then evaluated as pi * n * (coord / length), which makes the field
    // nodes on the plates exact zeros. Left zero for raw component vectors.
    std::array<int, 3> n{};
    std::array<double, 3> box{};

    /// Raw wave vector without mode bookkeeping; phases use k * coord.
    static WaveVector from_components(double kx, double ky, double kz);
};

struct ModeAmplitudes {
    double Ax = 0.0;
    double Ay = 0.0;
    double Az = 0.0;

    double norm_squared() const { return Ax * Ax + Ay * Ay + Az * Az; }
};

/// Where a field average is taken: the whole cavity box or one of the plates.
enum class Region { bulk, lower_plate, upper_plate };

void validate(const ModeIndex& mode);
void validate(const CavityGeometry& geom);

/// (pi nx/L, pi ny/L, pi nz/a) with k and kappa filled in.
WaveVector wave_vector(const ModeIndex& mode, const CavityGeometry& geom);

/// Dispersion omega = c k.
double angular_frequency(const WaveVector& wv, const UnitSystem& units);

/// Standing-wave electric field
///   E_x = A_x cos(kx x) sin(ky y) sin(kz z)
///   E_y = A_y sin(kx x) cos(ky y) sin(kz z)
///   E_z = A_z sin(kx x) sin(ky y) cos(kz z)
/// E_x and E_y vanish exactly on both plates.
Vec3 electric_mode_at(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp);

/// Real amplitude profile curl(E)/omega of the magnetic field. The -1/i
/// phase of B relative to E is not represented; only |B|^2 is ever used.
/// B_z carries sin(kz z) and is exactly zero on both plates.
Vec3 magnetic_mode_at(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp,
                      double omega);

/// A . k; zero iff the mode is divergence free.
double transversality_residual(const ModeAmplitudes& amp, const WaveVector& wv);

/// Central-difference estimate of div E at an interior point.
double divergence_residual(const Vec3& point, const WaveVector& wv, const ModeAmplitudes& amp,
                           double step);

/// Zero-point normalization A^2 = 2 hbar omega_k / (eps0 L^2 a).
double amplitude_norm_squared(const ModeIndex& mode, const CavityGeometry& geom,
                              const UnitSystem& units);

/// Transversal amplitude of squared norm `norm_squared`. The direction is
///   cos(mixing) e1 + sin(mixing) e2,  e1 ~ (ky, -kx, 0),  e2 ~ k x e1,
/// so mixing = 0 gives A_z = 0 and mixing = pi/2 puts the most weight on A_z.
ModeAmplitudes transverse_amplitudes(const WaveVector& wv, double norm_squared,
                                     double mixing = 0.0);

/// transverse_amplitudes() scaled to amplitude_norm_squared().
ModeAmplitudes normalized_amplitudes(const ModeIndex& mode, const CavityGeometry& geom,
                                     const UnitSystem& units, double mixing = 0.0);

/// Spatial average of |E|^2: A^2/8 over the box, A_z^2/4 over either plate.
double mean_square_E(const WaveVector& wv, const ModeAmplitudes& amp, Region region);

inline constexpr double kTransversalityTolerance = 1e-12;

/// Plate average of |B|^2 = (A_z^2 + A^2 kz^2/k^2) / (4 c^2). The reduction
/// relies on A . k = 0; throws InvalidArgument when the residual exceeds
/// kTransversalityTolerance relative to |A||k|.
double mean_square_B_boundary(const WaveVector& wv, const ModeAmplitudes& amp,
                              const UnitSystem& units);

}  // namespace casimir
