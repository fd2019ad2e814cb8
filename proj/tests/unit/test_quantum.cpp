#include "doctest.h"

#include "latchaos/errors.hpp"
#include "latchaos/quantum/propagate.hpp"

#include <cmath>
#include <numbers>

using namespace latchaos;
using namespace latchaos::quantum;
using latchaos::lattice::SystemParams;
using std::numbers::pi;

namespace {

// <(x - <x>)^2> by direct quadrature (packet far from the box edges)
double position_variance(const SpinorWavefunction& psi)
{
    const auto& g = psi.grid();
    double m1 = 0.0, m2 = 0.0, n = 0.0;
    for (int j = 0; j < 3; ++j) {
        const auto c = psi.component(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double w = std::norm(c[i]);
            const double x = g.position(i);
            n += w;
            m1 += w * x;
            m2 += w * x * x;
        }
    }
    m1 /= n;
    return m2 / n - m1 * m1;
}

double momentum_variance(const SpinorWavefunction& psi)
{
    // strip the carrier so central differences only see the envelope
    const auto& g = psi.grid();
    const double dx = g.dx();
    const double p0 = mean_momentum(psi);
    const std::size_t n = g.size();
    double q2 = 0.0;
    for (int j = 0; j < 3; ++j) {
        const auto c = psi.component(j);
        auto env = [&](std::size_t i) { return c[i] * std::polar(1.0, -p0 * g.position(i)); };
        for (std::size_t i = 1; i + 1 < n; ++i)
            q2 += std::norm((env(i + 1) - env(i - 1)) / (2.0 * dx)) * dx;
    }
    return q2;
}

double max_diff(const SpinorWavefunction& a, const SpinorWavefunction& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace

TEST_CASE("grid")
{
    CHECK_THROWS_AS(SpatialGrid(1000, 8), InvalidArgument);
    CHECK_THROWS_AS(SpatialGrid(1024, 0), InvalidArgument);
    const auto g = SpatialGrid::reference();
    CHECK(g.size() == 4096);
    CHECK(g.length() == 8.0);
    CHECK(g.dx() == doctest::Approx(8.0 / 4096));
    CHECK(g.max_momentum() == doctest::Approx(pi * 4096 / 8));
    CHECK(g.max_momentum() > 1600.0);
    CHECK(g.position(0) == -4.0);
    CHECK(g.momentum(1) == doctest::Approx(2 * pi / 8));
    CHECK(g.momentum(4095) == doctest::Approx(-2 * pi / 8));
}

TEST_CASE("gaussian initial state")
{
    const SpatialGrid g(2048, 8);
    const GaussianPacketSpec spec;
    CHECK(spec.uncertainty_product() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(spec.is_minimum_uncertainty());

    const auto psi = init_gaussian(spec, g);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(psi.mean_x()) < 1e-6);
    CHECK(std::abs(mean_momentum(psi) - 25.0) < 1e-6);
    CHECK(std::sqrt(position_variance(psi)) == doctest::Approx(spec.sigma_x).epsilon(1e-2));
    CHECK(std::sqrt(momentum_variance(psi)) == doctest::Approx(spec.sigma_p).epsilon(1e-2));
    const auto pop = psi.populations();
    CHECK(pop[0] == doctest::Approx(1.0));
    CHECK(pop[1] == 0.0);

    GaussianPacketSpec mid = spec;
    mid.internal = Eigen::Vector3cd::UnitY();
    const auto pop2 = init_gaussian(mid, g).populations();
    CHECK(pop2[0] == 0.0);
    CHECK(pop2[1] == doctest::Approx(1.0));
    CHECK(pop2[2] == 0.0);

    // a packet centered near the box edge wraps around
    GaussianPacketSpec edge = spec;
    edge.mean_x = 3.95;
    edge.mean_p = 0.0;
    CHECK(init_gaussian(edge, g).norm() == doctest::Approx(1.0));

    GaussianPacketSpec narrow = spec;
    narrow.sigma_x = 2.0 * g.dx();
    CHECK_THROWS_AS(init_gaussian(narrow, g), UnresolvableWavepacket);
    GaussianPacketSpec fast = spec;
    fast.mean_p = g.max_momentum();
    CHECK_THROWS_AS(init_gaussian(fast, g), MomentumOverflow);
    GaussianPacketSpec unnormed = spec;
    unnormed.internal = Eigen::Vector3cd(1.0, 1.0, 0.0);
    CHECK_THROWS_AS(init_gaussian(unnormed, g), InvalidArgument);

    GaussianPacketSpec wide = spec;
    wide.sigma_p = 3.0;
    CHECK_FALSE(wide.is_minimum_uncertainty());
}

TEST_CASE("overlap")
{
    const SpatialGrid g(1024, 8);
    GaussianPacketSpec s;
    const auto a = init_gaussian(s, g);
    CHECK(std::abs(overlap(a, a)) == doctest::Approx(1.0).epsilon(1e-13));
    s.internal = Eigen::Vector3cd::UnitZ();
    CHECK(std::abs(overlap(a, init_gaussian(s, g))) == 0.0);
    CHECK_THROWS_AS(overlap(a, init_gaussian(s, SpatialGrid(2048, 8))), GridMismatch);
}

TEST_CASE("free particle spreads analytically")
{
    const SpatialGrid g(2048, 8);
    const auto free = SystemParams::reference(0.0).without_fields();
    const GaussianPacketSpec spec;
    auto psi = init_gaussian(spec, g);
    const double dt = 1e-4;
    SplitOperator op(g, free, dt);
    op.advance(psi, 200);
    const double t = 200 * dt;
    const double expect = spec.sigma_x * spec.sigma_x + std::pow(spec.sigma_p * t, 2);
    CHECK(std::abs(position_variance(psi) - expect) < 1e-6);
    CHECK(std::abs(mean_momentum(psi) - 25.0) < 1e-9);
    CHECK(psi.mean_x() == doctest::Approx(25.0 * t).epsilon(1e-9));
}

TEST_CASE("split step is unitary and reversible")
{
    const auto g = SpatialGrid::reference();
    const auto pr = SystemParams::reference(0.25 * pi);
    const auto psi = init_gaussian({}, g);
    const auto fwd = split_step(psi, pr, 2e-6);
    CHECK(std::abs(fwd.norm() - 1.0) < 1e-12);
    const auto back = split_step(fwd, pr, -2e-6);
    CHECK(max_diff(back, psi) < 1e-10);
    CHECK_THROWS_AS(split_step(psi, pr, 0.0), InvalidArgument);
}

TEST_CASE("norm drift at phi = 0 with degenerate grid points")
{
    const auto g = SpatialGrid::reference();
    const auto pr = SystemParams::reference(0.0);
    auto psi = init_gaussian({}, g);
    SplitOperator op(g, pr, 1e-5);
    op.advance(psi, 100);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-10);

    SplitOptions strict;
    strict.degenerate_fallback = false;
    CHECK_THROWS_AS(SplitOperator(g, pr, 1e-5, strict), DegeneratePoint);
    CHECK_NOTHROW(SplitOperator(g, SystemParams::reference(0.25 * pi), 1e-5, strict));
}

TEST_CASE("energy is conserved")
{
    const SpatialGrid g(2048, 8);
    const auto pr = SystemParams::reference(0.25 * pi);
    auto psi = init_gaussian({}, g);
    SplitOperator op(g, pr, 2e-6);
    const double e0 = op.measure(psi).energy;
    op.advance(psi, 5000);
    const auto obs = op.measure(psi);
    CHECK(std::abs(obs.energy - e0) < 1e-6 * std::abs(e0));
    CHECK(std::abs(obs.norm - 1.0) < 1e-10);
}

TEST_CASE("a diagonal shift is a global phase")
{
    const SpatialGrid g(1024, 8);
    const auto pr = SystemParams::reference(0.25 * pi);
    PropagationConfig cfg;
    cfg.t_final = 0.004;
    cfg.sample_every = 200;
    const auto psi0 = init_gaussian({}, g);
    const auto a = propagate(psi0, pr, cfg);
    cfg.split.diagonal_shift = 1.0e4;
    const auto b = propagate(psi0, pr, cfg);
    REQUIRE(a.mean_p.size() == b.mean_p.size());
    for (std::size_t i = 0; i < a.mean_p.size(); ++i) {
        CHECK(std::abs(a.mean_p[i] - b.mean_p[i]) < 1e-9);
        CHECK(std::abs(a.mean_x[i] - b.mean_x[i]) < 1e-9);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(a.level_populations[j][i] - b.level_populations[j][i]) < 1e-9);
            CHECK(std::abs(a.adiabatic_populations[j][i] - b.adiabatic_populations[j][i]) < 1e-9);
        }
    }
    CHECK(std::abs(overlap(a.final_state, b.final_state)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("phase is 2 pi periodic")
{
    const SpatialGrid g(1024, 8);
    PropagationConfig cfg;
    cfg.t_final = 0.002;
    cfg.sample_every = 100;
    const auto psi0 = init_gaussian({}, g);
    const auto a = propagate(psi0, SystemParams::reference(1.0), cfg);
    const auto b = propagate(psi0, SystemParams::reference(1.0 + 2 * pi), cfg);
    for (std::size_t i = 0; i < a.mean_p.size(); ++i)
        CHECK(std::abs(a.mean_p[i] - b.mean_p[i]) < 1e-12 * 25.0);
    CHECK(max_diff(a.final_state, b.final_state) < 1e-12);
}

TEST_CASE("propagate sampling and accuracy policy")
{
    const SpatialGrid g(1024, 8);
    const auto pr = SystemParams::reference(0.0);
    CHECK(max_stable_dt(pr) == doctest::Approx(0.05 / std::sqrt(7e3 * 7e3 + 1.5e4 * 1.5e4)).epsilon(1e-3));
    CHECK(max_stable_dt(pr) > 2e-6);

    PropagationConfig cfg;
    cfg.t_final = 0.001;
    cfg.sample_every = 100;
    const auto rec = propagate(init_gaussian({}, g), pr, cfg);
    CHECK(rec.mean_p.size() == 6);
    CHECK(rec.mean_p.t0 == 0.0);
    CHECK(rec.mean_p.dt_sample == doctest::Approx(2e-4));
    CHECK(rec.mean_p[0] == doctest::Approx(25.0));
    CHECK(rec.adiabatic_populations[0].size() == 6);

    cfg.dt = 1e-5;
    CHECK_THROWS_AS(propagate(init_gaussian({}, g), pr, cfg), InvalidArgument);
    cfg.enforce_accuracy_policy = false;
    CHECK_NOTHROW(propagate(init_gaussian({}, g), pr, cfg));
}

TEST_CASE("adiabatic populations add up")
{
    const SpatialGrid g(1024, 8);
    const auto pr = SystemParams::reference(0.5 * pi);
    auto psi = init_gaussian({}, g);
    SplitOperator op(g, pr, 2e-6);
    op.advance(psi, 300);
    const auto obs = op.measure(psi);
    const double sum = obs.adiabatic_populations[0] + obs.adiabatic_populations[1] + obs.adiabatic_populations[2];
    CHECK(sum == doctest::Approx(obs.norm).epsilon(1e-10));
}

TEST_CASE("sensitivity with zero phase offset")
{
    const SpatialGrid g(1024, 8);
    PropagationConfig cfg;
    cfg.t_final = 0.002;
    cfg.sample_every = 100;
    const auto rec = sensitivity_run(init_gaussian({}, g), SystemParams::reference(0.25 * pi), 0.0, cfg);
    for (double chi : rec.chi.values)
        CHECK(chi == doctest::Approx(1.0).epsilon(1e-12));

    const auto rec2 = sensitivity_run(init_gaussian({}, g), SystemParams::reference(0.25 * pi), pi / 400, cfg);
    CHECK(rec2.chi[0] == doctest::Approx(1.0));
    for (double chi : rec2.chi.values)
        CHECK(chi <= 1.0 + 1e-12);
}
