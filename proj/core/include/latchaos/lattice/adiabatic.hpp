#pragma once

#include "latchaos/lattice/params.hpp"

#include <Eigen/Core>

namespace latchaos::lattice {

/// Diabatic potential matrix at position x. Level order |1>, |2>, |3>.
Eigen::Matrix3d potential_matrix(const SystemParams& params, double x);

/// d/dx of potential_matrix.
Eigen::Matrix3d potential_gradient(const SystemParams& params, double x);

/// Field-strength norm xi(x) = sqrt(Omega1^2 sin^2(kx) + Omega2^2 sin^2(kx + phi)).
double field_norm(const SystemParams& params, double x);

/// Below this value of xi the adiabatic basis is treated as undefined.
double degeneracy_threshold(const SystemParams& params) noexcept;

bool is_degenerate(const SystemParams& params, double x);

/// Column sign convention of the eigenvector matrix.
///  - canonical: largest-magnitude entry of every column is positive
///    (deterministic, but flips sign where the dominant entry changes);
///  - analytic: the closed-form orientation, continuous in x wherever xi > 0.
///    Required wherever O is differentiated along a path.
enum class ColumnSign { canonical, analytic };

struct AdiabaticFrame {
    double v1;
    double v2;
    double v3;
    Eigen::Matrix3d o; // columns: eigenvectors for v1, v2, v3
    double xi;
    double eta;
};

/// Closed-form diagonalization: v1 = Delta + eta, v2 = 2 Delta, v3 = Delta - eta.
/// Throws DegeneratePoint when xi <= degeneracy_threshold(params).
AdiabaticFrame adiabatic_frame(const SystemParams& params, double x,
                               ColumnSign sign = ColumnSign::canonical);

/// Omega1 sin(kx) O_12 + Omega2 sin(kx + phi) O_32; vanishes identically.
double dark_state_residual(const SystemParams& params, double x);

/// Nonadiabatic couplings of the adiabatic-frame equations; each is
/// proportional to p. Signs follow the analytic column orientation.
struct CouplingTerms {
    double t12;
    double t13;
    double t23;
};

CouplingTerms coupling_terms(const SystemParams& params, double x, double p);

/// Slopes of the outer eigen-potentials (v2 is flat).
struct EigenSlopes {
    double dv1;
    double dv3;
};

EigenSlopes eigen_slopes(const SystemParams& params, double x);

/// A(phi) and the smallest v1 - v2 gap g(phi).
struct GapAmplitude {
    double gap;
    double amplitude;
};

GapAmplitude gap_and_amplitude(const SystemParams& params);

/// Ratio of the peak t12 coupling to the smallest gap at momentum p.
/// Throws UndefinedRatio when phi = 0 mod pi.
double adiabaticity_ratio(const SystemParams& params, double p);

} // namespace latchaos::lattice
