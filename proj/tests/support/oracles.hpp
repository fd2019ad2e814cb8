#pragma once
// Independent reference computations shared by the unit and acceptance suites.
// Nothing here calls the closed-form eigen-analysis it is meant to check,
// except where a finite difference of it is the oracle.

#include "latchaos/lattice/adiabatic.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

namespace oracle {

using latchaos::lattice::SystemParams;

// Generic symmetric eigensolver, eigenvalues in descending order.
inline std::array<double, 3> eigenvalues_desc(const Eigen::Matrix3d& v)
{
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(v, Eigen::EigenvaluesOnly);
    const auto& e = es.eigenvalues(); // ascending
    return {e(2), e(1), e(0)};
}

inline double max_abs(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

// A = O^T dO/dx by central differences of the analytically oriented frame.
inline Eigen::Matrix3d derivative_coupling_fd(const SystemParams& params, double x, double h = 1e-7)
{
    using latchaos::lattice::ColumnSign;
    const auto plus = latchaos::lattice::adiabatic_frame(params, x + h, ColumnSign::analytic);
    const auto minus = latchaos::lattice::adiabatic_frame(params, x - h, ColumnSign::analytic);
    const auto mid = latchaos::lattice::adiabatic_frame(params, x, ColumnSign::analytic);
    const Eigen::Matrix3d d = (plus.o - minus.o) / (2.0 * h);
    return mid.o.transpose() * d;
}

// Couplings from p * sum_k O_ki dO_kj / dx. With the analytic orientation the
// (1,2) element carries the opposite sign to the closed-form t12.
inline latchaos::lattice::CouplingTerms coupling_fd(const SystemParams& params, double x, double p, double h = 1e-7)
{
    const Eigen::Matrix3d a = derivative_coupling_fd(params, x, h);
    return {-p * a(0, 1), p * a(0, 2), p * a(1, 2)};
}

// min over one lattice period of V1 - V2, from the numerical eigensolver:
// dense scan, then Brent refinement around the best sample.
struct DenseGap {
    double gap;
    double x;
};

inline DenseGap dense_gap(const SystemParams& params, std::size_t samples = 20000)
{
    // V1 - V2 = sqrt(delta^2 + xi^2) - delta, written without the cancellation: near
    // sin(phi) = 0 the gap sits far below eps * |V| (eigenvalues are checked elsewhere)
    auto gap_at = [&](double x) {
        const double xi = latchaos::lattice::field_norm(params, x);
        const double d = params.delta();
        return xi * xi / (std::sqrt(d * d + xi * xi) + d);
    };
    const double period = 2.0 * std::numbers::pi / params.k();
    const double h = period / static_cast<double>(samples);
    double best = std::numeric_limits<double>::infinity();
    double xbest = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = h * static_cast<double>(i);
        const double g = gap_at(x);
        if (g < best) {
            best = g;
            xbest = x;
        }
    }
    // search in the scaled offset from xbest: Brent's abscissa tolerance is capped at
    // sqrt(eps) with an absolute floor, too coarse for the narrow dips near sin(phi) = 0
    const auto r = boost::math::tools::brent_find_minima([&](double s) { return gap_at(xbest + s * h); }, -1.0,
                                                         1.0, std::numeric_limits<double>::digits);
    return {std::min(best, r.second), r.second < best ? xbest + r.first * h : xbest};
}

// The adiabaticity ratio written out directly from its defining formula.
inline double ratio_formula(double o1, double o2, double delta, double phi, double k, double p)
{
    const double s = o1 * o1 + o2 * o2;
    const double r = std::sqrt(o1 * o1 * o1 * o1 + o2 * o2 * o2 * o2 + 2.0 * o1 * o1 * o2 * o2 * std::cos(2.0 * phi));
    const double a2 = 0.5 * (s - r);
    const double a = std::sqrt(a2);
    const double g = std::sqrt(a2 + delta * delta) - delta;
    return p * k * o1 * o2 * std::sin(phi) / (std::sqrt(2.0) * std::pow(a2 + delta * delta, 0.25) * a * std::pow(g, 1.5));
}

} // namespace oracle
