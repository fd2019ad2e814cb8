#include "latchaos/semiclassical/frame.hpp"

#include "latchaos/lattice/adiabatic.hpp"

#include <algorithm>
#include <cmath>

namespace latchaos::semiclassical {

using lattice::ColumnSign;

AdiabaticState to_adiabatic(const TrajectoryState& s, const lattice::SystemParams& params)
{
    const auto f = lattice::adiabatic_frame(params, s.x, ColumnSign::analytic);
    AdiabaticState out{s.x, s.p, {}};
    for (int i = 0; i < 3; ++i)
        out.c[i] = f.o(0, i) * s.c[0] + f.o(1, i) * s.c[1] + f.o(2, i) * s.c[2];
    return out;
}

TrajectoryState from_adiabatic(const AdiabaticState& s, const lattice::SystemParams& params)
{
    const auto f = lattice::adiabatic_frame(params, s.x, ColumnSign::analytic);
    TrajectoryState out{s.x, s.p, {}};
    for (int k = 0; k < 3; ++k)
        out.c[k] = f.o(k, 0) * s.c[0] + f.o(k, 1) * s.c[1] + f.o(k, 2) * s.c[2];
    return out;
}

Eigen::Matrix3d derivative_coupling(const lattice::SystemParams& params, double x)
{
    const auto t = lattice::coupling_terms(params, x, 1.0);
    Eigen::Matrix3d a;
    a << 0.0,    -t.t12, t.t13,
         t.t12,  0.0,    t.t23,
         -t.t13, -t.t23, 0.0;
    return a;
}

double adiabatic_force(const AdiabaticState& s, const lattice::SystemParams& params, FrameForce model)
{
    const auto slopes = lattice::eigen_slopes(params, s.x);
    double f = -(std::norm(s.c[0]) * slopes.dv1 + std::norm(s.c[2]) * slopes.dv3);
    if (model == FrameForce::population_weighted)
        return f;

    const auto frame = lattice::adiabatic_frame(params, s.x, ColumnSign::analytic);
    const std::array<double, 3> v = {frame.v1, frame.v2, frame.v3};
    const Eigen::Matrix3d a = derivative_coupling(params, s.x);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            f -= 2.0 * (std::conj(s.c[i]) * s.c[j]).real() * a(i, j) * (v[j] - v[i]);
    return f;
}

AdiabaticState adiabatic_rhs(const AdiabaticState& s, const lattice::SystemParams& params, FrameForce model)
{
    const auto frame = lattice::adiabatic_frame(params, s.x, ColumnSign::analytic);
    const auto t = lattice::coupling_terms(params, s.x, s.p);
    const Complex i{0.0, 1.0};
    const auto& c = s.c;
    // i dC/dt = M C
    const Complex m1 = frame.v1 * c[0] + i * t.t12 * c[1] - i * t.t13 * c[2];
    const Complex m2 = -i * t.t12 * c[0] + frame.v2 * c[1] - i * t.t23 * c[2];
    const Complex m3 = i * t.t13 * c[0] + i * t.t23 * c[1] + frame.v3 * c[2];
    return {s.p, adiabatic_force(s, params, model), {-i * m1, -i * m2, -i * m3}};
}

FrameComparison frame_equivalence_check(const TrajectoryState& state0, const lattice::SystemParams& params,
                                        double t_final, Tolerance tolerance, double sample_dt, FrameForce model)
{
    if (!(t_final > 0.0) || !(sample_dt > 0.0))
        throw InvalidArgument("t_final and sample interval must be positive");

    auto pack_a = [](const AdiabaticState& s) {
        return PackedState{s.x, s.p, s.c[0].real(), s.c[0].imag(), s.c[1].real(),
                           s.c[1].imag(), s.c[2].real(), s.c[2].imag()};
    };
    auto unpack_a = [](const PackedState& y) {
        return AdiabaticState{y[0], y[1], {Complex{y[2], y[3]}, Complex{y[4], y[5]}, Complex{y[6], y[7]}}};
    };
    auto rhs = [&](double, const PackedState& y) { return pack_a(adiabatic_rhs(unpack_a(y), params, model)); };
    Dopri5<8, decltype(rhs)> stepper(rhs, tolerance);

    FrameComparison out{};
    for (auto& s : out.adiabatic_populations)
        s.dt_sample = sample_dt;

    auto diabatic_rhs = [&params](double, const PackedState& y) { return ehrenfest_rhs_packed(y, params); };
    Dopri5<8, decltype(diabatic_rhs)> reference(diabatic_rhs, tolerance);

    PackedState ya = pack_a(to_adiabatic(state0, params));
    PackedState yd = pack(state0);
    double ta = 0.0;
    double td = 0.0;
    auto compare = [&] {
        const AdiabaticState a = unpack_a(ya);
        const AdiabaticState mapped = to_adiabatic(unpack(yd), params);
        out.max_position = std::max(out.max_position, std::abs(yd[0] - a.x));
        out.max_momentum = std::max(out.max_momentum, std::abs(yd[1] - a.p));
        for (int i = 0; i < 3; ++i) {
            out.max_population = std::max(out.max_population, std::abs(std::norm(mapped.c[i]) - std::norm(a.c[i])));
            out.adiabatic_populations[i].values.push_back(std::norm(a.c[i]));
        }
    };

    const auto samples = static_cast<std::size_t>(std::floor(t_final / sample_dt * (1.0 + 1e-12)));
    compare();
    for (std::size_t s = 1; s <= samples; ++s) {
        const double target = static_cast<double>(s) * sample_dt;
        stepper.advance_to(ta, ya, target);
        reference.advance_to(td, yd, target);
        compare();
    }
    out.max_deviation = std::max({out.max_position, out.max_momentum, out.max_population});
    return out;
}

} // namespace latchaos::semiclassical
