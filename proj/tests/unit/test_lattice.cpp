#include "doctest.h"
#include "oracles.hpp"

#include "latchaos/errors.hpp"
#include "latchaos/lattice/adiabatic.hpp"
#include "latchaos/lattice/params.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace latchaos;
using namespace latchaos::lattice;
using std::numbers::pi;

namespace {

SystemParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> om(1e3, 1e4), de(2e3, 3e4), ph(0.0, 2.0 * pi);
    return SystemParams(om(rng), om(rng), de(rng), ph(rng));
}

} // namespace

TEST_CASE("params: validation and phase reduction")
{
    CHECK_THROWS_AS(SystemParams(0.0, 1.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(SystemParams(1.0, -1.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, 1.0, 0.0, 0.0), InvalidArgument);
    CHECK(SystemParams::reference(2.0 * pi + 0.3).phi() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(SystemParams::reference(-0.5 * pi).phi() == doctest::Approx(1.5 * pi));
    CHECK(reduce_phase(2.0 * pi) == 0.0);
}

TEST_CASE("potential matrix entries")
{
    const auto p0 = SystemParams::reference(0.0);
    const Eigen::Matrix3d v0 = potential_matrix(p0, 0.0);
    CHECK(v0(0, 0) == 3e4);
    CHECK(v0(2, 2) == 3e4);
    CHECK(v0(1, 1) == 0.0);
    CHECK(v0(0, 1) == 0.0);
    CHECK(v0(1, 2) == 0.0);

    const Eigen::Matrix3d v = potential_matrix(p0, 0.25);
    CHECK(v(0, 1) == doctest::Approx(6e3).epsilon(1e-15));
    CHECK(v(1, 2) == doctest::Approx(7e3).epsilon(1e-15));
    CHECK(v(0, 2) == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const auto pr = random_params(rng);
        const Eigen::Matrix3d m = potential_matrix(pr, ux(rng));
        CHECK(m == m.transpose());
    }
}

TEST_CASE("potential gradient matches finite differences")
{
    const auto pr = SystemParams::reference(0.25 * pi);
    for (double x : {0.03, 0.41, 0.77}) {
        const double h = 1e-6;
        const Eigen::Matrix3d fd = (potential_matrix(pr, x + h) - potential_matrix(pr, x - h)) / (2.0 * h);
        CHECK(oracle::max_abs(fd - potential_gradient(pr, x)) < 1e-6 * oracle::max_abs(fd));
    }
}

TEST_CASE("adiabatic frame against a numerical eigensolver")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const auto pr = random_params(rng);
        const double x = ux(rng);
        const auto f = adiabatic_frame(pr, x);
        const Eigen::Matrix3d v = potential_matrix(pr, x);
        const auto e = oracle::eigenvalues_desc(v);
        const double scale = oracle::max_abs(v);

        CHECK(std::abs(f.v1 - e[0]) < 1e-12 * scale);
        CHECK(std::abs(f.v3 - e[2]) < 1e-12 * scale);
        CHECK(f.v2 == 2.0 * pr.delta());
        CHECK(f.v1 >= f.v2);
        CHECK(f.v2 >= f.v3);
        CHECK(oracle::max_abs(f.o.transpose() * f.o - Eigen::Matrix3d::Identity()) < 1e-12);
        const Eigen::Matrix3d d = Eigen::Vector3d(f.v1, f.v2, f.v3).asDiagonal();
        CHECK(oracle::max_abs(f.o.transpose() * v * f.o - d) < 1e-10 * scale);
        // canonical sign: the largest entry of every column is positive
        for (int j = 0; j < 3; ++j) {
            Eigen::Index imax = 0;
            f.o.col(j).cwiseAbs().maxCoeff(&imax);
            CHECK(f.o(imax, j) > 0.0);
        }
    }
}

TEST_CASE("adiabatic frame at phi = pi/2, x = 0")
{
    const auto f = adiabatic_frame(SystemParams::reference(0.5 * pi), 0.0);
    const double eta = std::sqrt(4.9e7 + 2.25e8);
    CHECK(f.xi == doctest::Approx(7000.0).epsilon(1e-14));
    CHECK(f.eta == doctest::Approx(eta).epsilon(1e-14));
    CHECK(f.v1 == doctest::Approx(31552.9).epsilon(1e-5));
    CHECK(f.v3 == doctest::Approx(-1552.9).epsilon(1e-4));
    CHECK(f.v2 == 3e4);
    // dark state is |1> up to sign
    CHECK(std::abs(f.o(0, 1)) == doctest::Approx(1.0));
    CHECK(f.o(1, 1) == 0.0);
    CHECK(std::abs(f.o(2, 1)) < 1e-15);
    CHECK(dark_state_residual(SystemParams::reference(0.5 * pi), 0.0) == 0.0);
}

TEST_CASE("degenerate points are flagged")
{
    const auto p0 = SystemParams::reference(0.0);
    CHECK(is_degenerate(p0, 0.0));
    CHECK(is_degenerate(p0, 0.5));
    CHECK_FALSE(is_degenerate(p0, 0.25));
    CHECK_THROWS_AS(adiabatic_frame(p0, 0.0), DegeneratePoint);
    CHECK_THROWS_AS(coupling_terms(p0, 1.0, 25.0), DegeneratePoint);
    CHECK_THROWS_AS(dark_state_residual(p0, 0.5), DegeneratePoint);
    CHECK_FALSE(is_degenerate(SystemParams::reference(0.25 * pi), 0.0));
}

TEST_CASE("dark state residual vanishes")
{
    const auto pr = SystemParams::reference(0.25 * pi);
    CHECK(std::abs(dark_state_residual(pr, 0.1)) < 1e-10 * field_norm(pr, 0.1));
    double worst = 0.0, max_xi = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = i / 1000.0;
        worst = std::max(worst, std::abs(dark_state_residual(pr, x)));
        max_xi = std::max(max_xi, field_norm(pr, x));
    }
    CHECK(worst < 1e-10 * max_xi);
}

TEST_CASE("analytic orientation is continuous in x")
{
    const auto pr = SystemParams::reference(0.25 * pi);
    auto prev = adiabatic_frame(pr, 0.0, ColumnSign::analytic).o;
    for (int i = 1; i <= 4000; ++i) {
        const auto o = adiabatic_frame(pr, i / 2000.0, ColumnSign::analytic).o;
        CHECK(oracle::max_abs(o - prev) < 0.05);
        prev = o;
    }
}

TEST_CASE("coupling terms")
{
    const double eta = std::sqrt(4.9e7 + 2.25e8);
    const double t12_expect = 25.0 * 2.0 * pi * 4.2e7 / std::sqrt(2.0 * 4.9e7 * (eta * eta - 1.5e4 * eta));
    const auto c = coupling_terms(SystemParams::reference(0.5 * pi), 0.0, 25.0);
    CHECK(c.t12 == doctest::Approx(t12_expect).epsilon(1e-12));
    CHECK(c.t12 == doctest::Approx(131.4).epsilon(1e-3));

    SUBCASE("phi = 0 decouples the dark state")
    {
        const auto p0 = SystemParams::reference(0.0);
        for (double x : {0.1, 0.2, 0.33, 0.9}) {
            const auto t = coupling_terms(p0, x, 25.0);
            CHECK(t.t12 == 0.0);
            CHECK(t.t23 == 0.0);
        }
    }
    SUBCASE("zero momentum")
    {
        const auto t = coupling_terms(SystemParams::reference(1.1), 0.3, 0.0);
        CHECK(t.t12 == 0.0);
        CHECK(t.t13 == 0.0);
        CHECK(t.t23 == 0.0);
    }
    SUBCASE("linear in p and the t12/t23 identity")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ux(0.0, 1.0), up(-40.0, 40.0);
        for (int i = 0; i < 500; ++i) {
            const auto pr = random_params(rng);
            const double x = ux(rng), p = up(rng);
            const auto a = coupling_terms(pr, x, p);
            const auto b = coupling_terms(pr, x, 2.0 * p);
            CHECK(b.t12 == 2.0 * a.t12);
            CHECK(b.t13 == 2.0 * a.t13);
            CHECK(b.t23 == 2.0 * a.t23);
            const auto f = adiabatic_frame(pr, x);
            const double d = pr.delta();
            if (std::abs(a.t23) > 1e-12)
                CHECK(a.t12 / a.t23 == doctest::Approx(std::sqrt((f.eta * f.eta + d * f.eta) / (f.eta * f.eta - d * f.eta))).epsilon(1e-9));
        }
    }
    SUBCASE("finite-difference oracle")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> ux(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            const auto pr = random_params(rng);
            const double x = ux(rng);
            if (field_norm(pr, x) < 1e-2 * std::max(pr.omega1(), pr.omega2()))
                continue;
            const auto t = coupling_terms(pr, x, 25.0);
            const auto fd = oracle::coupling_fd(pr, x, 25.0);
            const double scale = std::abs(t.t12) + std::abs(t.t13) + std::abs(t.t23);
            CHECK(std::abs(fd.t12 - t.t12) < 1e-6 * scale);
            CHECK(std::abs(fd.t13 - t.t13) < 1e-6 * scale);
            CHECK(std::abs(fd.t23 - t.t23) < 1e-6 * scale);
        }
    }
}

TEST_CASE("eigen-potential slopes")
{
    const auto pr = SystemParams::reference(0.7);
    for (double x : {0.05, 0.3, 0.61}) {
        const double h = 1e-6;
        const auto sp = eigen_slopes(pr, x);
        const auto fp = adiabatic_frame(pr, x + h), fm = adiabatic_frame(pr, x - h);
        CHECK(sp.dv1 == doctest::Approx((fp.v1 - fm.v1) / (2 * h)).epsilon(1e-6));
        CHECK(sp.dv3 == doctest::Approx((fp.v3 - fm.v3) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("gap and amplitude")
{
    const auto g0 = gap_and_amplitude(SystemParams::reference(0.0));
    CHECK(g0.amplitude == 0.0);
    CHECK(g0.gap == 0.0);

    const auto gq = gap_and_amplitude(SystemParams::reference(0.25 * pi));
    CHECK(gq.amplitude == doctest::Approx(3478).epsilon(1e-3));
    CHECK(gq.gap == doctest::Approx(398).epsilon(2e-3));

    const auto gh = gap_and_amplitude(SystemParams::reference(0.5 * pi));
    CHECK(gh.amplitude == doctest::Approx(6000.0).epsilon(1e-12));
    CHECK(gh.gap == doctest::Approx(std::sqrt(3.6e7 + 2.25e8) - 1.5e4).epsilon(1e-12));
    CHECK(gh.gap == doctest::Approx(1155).epsilon(1e-3));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const auto pr = random_params(rng);
        const auto ga = gap_and_amplitude(pr);
        CHECK(ga.gap >= 0.0);
        CHECK(ga.amplitude >= 0.0);
        CHECK(ga.gap == doctest::Approx(oracle::dense_gap(pr).gap).epsilon(1e-9));
    }
}

TEST_CASE("adiabaticity ratio")
{
    const double t_q = adiabaticity_ratio(SystemParams::reference(0.25 * pi), 25.0);
    const double t_h = adiabaticity_ratio(SystemParams::reference(0.5 * pi), 25.0);
    CHECK(t_q == doctest::Approx(0.962).epsilon(1e-3));
    CHECK(t_q == doctest::Approx(oracle::ratio_formula(6e3, 7e3, 1.5e4, 0.25 * pi, 2 * pi, 25.0)).epsilon(1e-12));
    CHECK(t_h == doctest::Approx(0.16).epsilon(0.03));
    CHECK(adiabaticity_ratio(SystemParams::reference(0.4), 0.0) == 0.0);
    CHECK_THROWS_AS(adiabaticity_ratio(SystemParams::reference(0.0), 25.0), UndefinedRatio);
    CHECK_THROWS_AS(adiabaticity_ratio(SystemParams::reference(pi), 25.0), UndefinedRatio);

    // the ratio is t12 at the gap minimum over g
    for (double phi : {0.1, 0.25 * pi, 1.0, 0.5 * pi, 2.5}) {
        const auto pr = SystemParams::reference(phi);
        const auto dg = oracle::dense_gap(pr);
        const double t12 = coupling_terms(pr, dg.x, 25.0).t12;
        CHECK(std::abs(t12) / gap_and_amplitude(pr).gap == doctest::Approx(adiabaticity_ratio(pr, 25.0)).epsilon(1e-7));
    }
}

TEST_CASE("natural units for helium-4")
{
    const auto u = NaturalUnits::helium4();
    CHECK(u.time_unit() == doctest::Approx(7.39e-5).epsilon(5e-3));
    CHECK(std::abs(u.time_unit() / 77e-6 - 1.0) < 0.1);
    CHECK(u.frequency_unit() == doctest::Approx(2.0 / u.time_unit()));
    CHECK(u.momentum_unit() * u.length_unit() == doctest::Approx(constants::hbar));

    const auto rep = to_physical(u, SystemParams::reference(0.0));
    CHECK(rep.detuning_hz == doctest::Approx(rep.detuning_rad_s / (2 * pi)));
    CHECK(std::abs(rep.detuning_hz / 62e6 - 1.0) < 0.1);
    CHECK(rep.recoil_momentum_natural == doctest::Approx(2 * pi));

    const NaturalUnits doubled(2.0 * constants::helium4_wavelength, constants::helium4_mass);
    CHECK(doubled.time_unit() == doctest::Approx(4.0 * u.time_unit()).epsilon(1e-14));
    CHECK_THROWS_AS(NaturalUnits(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(NaturalUnits(1.0, -1.0), InvalidArgument);

    const auto temp = kinetic_temperature(u, 25.0, 10.0 / std::sqrt(2.0));
    CHECK(temp.from_spread_k > 0.0);
    CHECK(temp.from_total_k > temp.from_spread_k);
    CHECK(temp.from_total_k / temp.from_spread_k == doctest::Approx((625.0 + 50.0) / 50.0));
}
