#include "latchaos/semiclassical/ehrenfest.hpp"

#include "latchaos/lattice/adiabatic.hpp"

#include <cmath>

namespace latchaos::semiclassical {

double TrajectoryState::internal_norm() const noexcept
{
    return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
}

PackedState pack(const TrajectoryState& s) noexcept
{
    return {s.x, s.p, s.c[0].real(), s.c[0].imag(), s.c[1].real(), s.c[1].imag(), s.c[2].real(), s.c[2].imag()};
}

TrajectoryState unpack(const PackedState& y) noexcept
{
    return {y[0], y[1], {Complex{y[2], y[3]}, Complex{y[4], y[5]}, Complex{y[6], y[7]}}};
}

PackedState ehrenfest_rhs_packed(const PackedState& y, const lattice::SystemParams& params) noexcept
{
    const double k = params.k();
    const double kx = k * y[0];
    const double s1 = std::sin(kx);
    const double k1 = std::cos(kx);
    const double s2 = std::sin(kx + params.phi());
    const double k2 = std::cos(kx + params.phi());
    const double a = params.omega1() * s1;
    const double b = params.omega2() * s2;
    const double d2 = 2.0 * params.delta();

    const double r1 = y[2], i1 = y[3], r2 = y[4], i2 = y[5], r3 = y[6], i3 = y[7];

    // C2 C1* + c.c. = 2 Re(C1* C2)
    const double re12 = r1 * r2 + i1 * i2;
    const double re23 = r2 * r3 + i2 * i3;
    const double force = -params.omega1() * k * 2.0 * re12 * k1 - params.omega2() * k * 2.0 * re23 * k2;

    // (V C) rows; dC/dt = -i (V C)
    const double vr1 = d2 * r1 + a * r2, vi1 = d2 * i1 + a * i2;
    const double vr2 = a * r1 + b * r3, vi2 = a * i1 + b * i3;
    const double vr3 = b * r2 + d2 * r3, vi3 = b * i2 + d2 * i3;

    return {y[1], force, vi1, -vr1, vi2, -vr2, vi3, -vr3};
}

TrajectoryState ehrenfest_rhs(const TrajectoryState& state, const lattice::SystemParams& params)
{
    return unpack(ehrenfest_rhs_packed(pack(state), params));
}

double ehrenfest_energy(const TrajectoryState& state, const lattice::SystemParams& params)
{
    const Eigen::Matrix3d v = lattice::potential_matrix(params, state.x);
    double pot = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            pot += v(r, c) * (std::conj(state.c[r]) * state.c[c]).real();
    return 0.5 * state.p * state.p + pot;
}

TrajectoryRecord integrate(const TrajectoryState& state0, const lattice::SystemParams& params, double t_final,
                           Tolerance tolerance, double sample_dt)
{
    if (t_final == 0.0 || !std::isfinite(t_final))
        throw InvalidArgument("t_final must be finite and nonzero");
    if (!(sample_dt > 0.0))
        throw InvalidArgument("sample interval must be positive");

    const double dir = t_final > 0.0 ? 1.0 : -1.0;
    const double step = dir * sample_dt;
    const auto samples = static_cast<std::size_t>(std::floor(std::abs(t_final) / sample_dt * (1.0 + 1e-12)));

    TrajectoryRecord rec;
    for (TimeSeries* s : {&rec.x, &rec.p, &rec.populations[0], &rec.populations[1], &rec.populations[2],
                          &rec.energy, &rec.norm}) {
        s->dt_sample = step;
        s->values.reserve(samples + 1);
    }
    auto record = [&](const PackedState& y) {
        const TrajectoryState s = unpack(y);
        rec.x.values.push_back(s.x);
        rec.p.values.push_back(s.p);
        for (int j = 0; j < 3; ++j)
            rec.populations[j].values.push_back(std::norm(s.c[j]));
        rec.energy.values.push_back(ehrenfest_energy(s, params));
        rec.norm.values.push_back(s.internal_norm());
    };

    auto rhs = [&params](double, const PackedState& y) { return ehrenfest_rhs_packed(y, params); };
    Dopri5<8, decltype(rhs)> stepper(rhs, tolerance);

    PackedState y = pack(state0);
    double t = 0.0;
    record(y);
    for (std::size_t i = 1; i <= samples; ++i) {
        stepper.advance_to(t, y, static_cast<double>(i) * step);
        record(y);
    }
    stepper.advance_to(t, y, t_final);
    rec.final_state = unpack(y);
    rec.stats = stepper.stats();
    return rec;
}

} // namespace latchaos::semiclassical
