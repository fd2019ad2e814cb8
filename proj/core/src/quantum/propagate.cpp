#include "latchaos/quantum/propagate.hpp"

#include "../fftw_plan.hpp"
#include "latchaos/errors.hpp"
#include "latchaos/lattice/adiabatic.hpp"
#include "latchaos/parallel.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace latchaos::quantum {

namespace {

using lattice::SystemParams;

// std::complex operator* carries C99 Annex G inf/nan handling that blocks
// vectorization in the hot loops.
inline Complex cmul(Complex a, Complex b) noexcept
{
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline Complex phase(double angle) noexcept { return {std::cos(angle), std::sin(angle)}; }

} // namespace

struct SplitOperator::Impl {
    SpatialGrid grid;
    SystemParams params;
    double dt;
    SplitOptions options;

    detail::FftwBuffer work;
    detail::BatchPlan forward;
    detail::BatchPlan backward;

    std::vector<Complex> half_kinetic; // exp(-i p^2 dt / 4) / n
    std::vector<Complex> full_kinetic; // exp(-i p^2 dt / 2) / n
    // symmetric potential propagator, upper triangle per grid point
    std::vector<Complex> u11, u12, u13, u22, u23, u33;

    // measurement tables
    std::vector<double> kinetic_energy; // p^2 / 2 in FFT order
    std::vector<double> coupling_a;     // Omega1 sin(kx)
    std::vector<double> coupling_b;     // Omega2 sin(kx + phi)
    std::vector<Eigen::Matrix3d> frames; // canonical O(x); NaN where undefined

    Impl(const SpatialGrid& g, const SystemParams& p, double step, const SplitOptions& opt)
        : grid(g), params(p), dt(step), options(opt), work(3 * g.size()),
          forward(g.size(), 3, FFTW_FORWARD, work, FFTW_MEASURE),
          backward(g.size(), 3, FFTW_BACKWARD, work, FFTW_MEASURE)
    {
        const std::size_t n = grid.size();
        const double inv_n = 1.0 / static_cast<double>(n);
        half_kinetic.resize(n);
        full_kinetic.resize(n);
        kinetic_energy.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double pm = grid.momentum(m);
            const double e = 0.5 * pm * pm;
            kinetic_energy[m] = e;
            half_kinetic[m] = phase(-0.5 * e * dt) * inv_n;
            full_kinetic[m] = phase(-e * dt) * inv_n;
        }

        u11.resize(n); u12.resize(n); u13.resize(n);
        u22.resize(n); u23.resize(n); u33.resize(n);
        coupling_a.resize(n);
        coupling_b.resize(n);
        frames.resize(n);
        const double shift = options.diagonal_shift;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t m = 0; m < n; ++m) {
            const double x = grid.position(m);
            const Eigen::Matrix3d v = lattice::potential_matrix(params, x);
            coupling_a[m] = v(0, 1);
            coupling_b[m] = v(1, 2);

            if (!lattice::is_degenerate(params, x)) {
                const auto f = lattice::adiabatic_frame(params, x);
                set_propagator(m, f, shift);
                frames[m] = f.o;
                continue;
            }
            if (!options.degenerate_fallback)
                throw DegeneratePoint(x, lattice::field_norm(params, x));

            const Complex outer = phase(-(2.0 * params.delta() + shift) * dt);
            u11[m] = outer; u22[m] = phase(-shift * dt); u33[m] = outer;
            u12[m] = u13[m] = u23[m] = Complex{0.0, 0.0};

            // populations use the one-sided limit of the basis; at phi = 0 mod pi
            // both sides agree up to column signs
            const double nudge = 1e-6 * grid.dx();
            if (!lattice::is_degenerate(params, x + nudge))
                frames[m] = lattice::adiabatic_frame(params, x + nudge).o;
            else
                frames[m].setConstant(nan);
        }
    }

    void set_propagator(std::size_t m, const lattice::AdiabaticFrame& f, double shift)
    {
        const std::array<Complex, 3> e = {phase(-(f.v1 + shift) * dt), phase(-(f.v2 + shift) * dt),
                                          phase(-(f.v3 + shift) * dt)};
        auto entry = [&](int r, int c) {
            Complex s{0.0, 0.0};
            for (int j = 0; j < 3; ++j)
                s += e[j] * (f.o(r, j) * f.o(c, j));
            return s;
        };
        u11[m] = entry(0, 0); u12[m] = entry(0, 1); u13[m] = entry(0, 2);
        u22[m] = entry(1, 1); u23[m] = entry(1, 2); u33[m] = entry(2, 2);
    }

    void apply_kinetic(const std::vector<Complex>& factor)
    {
        const std::size_t n = grid.size();
        Complex* w = work.data();
        for (int j = 0; j < 3; ++j) {
            Complex* c = w + j * n;
            for (std::size_t m = 0; m < n; ++m)
                c[m] = cmul(c[m], factor[m]);
        }
    }

    void apply_potential()
    {
        const std::size_t n = grid.size();
        Complex* c1 = work.data();
        Complex* c2 = c1 + n;
        Complex* c3 = c2 + n;
        for (std::size_t m = 0; m < n; ++m) {
            const Complex a = c1[m];
            const Complex b = c2[m];
            const Complex c = c3[m];
            c1[m] = cmul(u11[m], a) + cmul(u12[m], b) + cmul(u13[m], c);
            c2[m] = cmul(u12[m], a) + cmul(u22[m], b) + cmul(u23[m], c);
            c3[m] = cmul(u13[m], a) + cmul(u23[m], b) + cmul(u33[m], c);
        }
    }

    void load(const SpinorWavefunction& psi)
    {
        if (!(psi.grid() == grid))
            throw GridMismatch("wavefunction grid does not match propagator grid");
        std::memcpy(static_cast<void*>(work.data()), psi.data().data(), sizeof(Complex) * work.size());
    }

    void store(SpinorWavefunction& psi)
    {
        std::memcpy(static_cast<void*>(psi.data().data()), work.data(), sizeof(Complex) * work.size());
    }

    void advance(SpinorWavefunction& psi, std::size_t steps)
    {
        if (steps == 0)
            return;
        load(psi);
        forward.execute();
        apply_kinetic(half_kinetic);
        for (std::size_t s = 0; s < steps; ++s) {
            backward.execute();
            apply_potential();
            forward.execute();
            apply_kinetic(s + 1 == steps ? half_kinetic : full_kinetic);
        }
        backward.execute();
        store(psi);
    }

    Observables measure(const SpinorWavefunction& psi)
    {
        const std::size_t n = grid.size();
        const double dx = grid.dx();
        const auto d = psi.data();
        const double two_delta = 2.0 * params.delta();

        Observables obs{};
        obs.mean_x = psi.mean_x();
        obs.level_populations = psi.populations();
        obs.norm = obs.level_populations[0] + obs.level_populations[1] + obs.level_populations[2];

        double potential = 0.0;
        std::array<double, 3> adiabatic{0.0, 0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const Complex c1 = d[m];
            const Complex c2 = d[n + m];
            const Complex c3 = d[2 * n + m];
            potential += two_delta * (std::norm(c1) + std::norm(c3))
                       + 2.0 * coupling_a[m] * (std::conj(c1) * c2).real()
                       + 2.0 * coupling_b[m] * (std::conj(c2) * c3).real();
            const Eigen::Matrix3d& o = frames[m];
            for (int j = 0; j < 3; ++j)
                adiabatic[j] += std::norm(o(0, j) * c1 + o(1, j) * c2 + o(2, j) * c3);
        }
        for (int j = 0; j < 3; ++j)
            obs.adiabatic_populations[j] = adiabatic[j] * dx;

        load(psi);
        forward.execute();
        const Complex* w = work.data();
        double weight = 0.0;
        double first = 0.0;
        double kinetic = 0.0;
        for (int j = 0; j < 3; ++j) {
            for (std::size_t m = 0; m < n; ++m) {
                const double a = std::norm(w[j * n + m]);
                weight += a;
                first += grid.momentum(m) * a;
                kinetic += kinetic_energy[m] * a;
            }
        }
        obs.mean_p = weight > 0.0 ? first / weight : 0.0;
        // Parseval: sum |psi~|^2 = n sum |psi|^2
        obs.energy = kinetic * dx / static_cast<double>(n) + potential * dx + options.diagonal_shift * obs.norm;
        return obs;
    }
};

SplitOperator::SplitOperator(const SpatialGrid& grid, const SystemParams& params, double dt,
                             const SplitOptions& options)
    : impl_(std::make_unique<Impl>(grid, params, dt, options))
{
    if (dt == 0.0 || !std::isfinite(dt))
        throw InvalidArgument("time step must be finite and nonzero");
}

SplitOperator::~SplitOperator() = default;
SplitOperator::SplitOperator(SplitOperator&&) noexcept = default;
SplitOperator& SplitOperator::operator=(SplitOperator&&) noexcept = default;

const SpatialGrid& SplitOperator::grid() const noexcept { return impl_->grid; }
double SplitOperator::dt() const noexcept { return impl_->dt; }

void SplitOperator::advance(SpinorWavefunction& psi, std::size_t steps) { impl_->advance(psi, steps); }

Observables SplitOperator::measure(const SpinorWavefunction& psi) { return impl_->measure(psi); }

SpinorWavefunction split_step(const SpinorWavefunction& psi, const SystemParams& params, double dt,
                              const SplitOptions& options)
{
    SplitOperator op(psi.grid(), params, dt, options);
    SpinorWavefunction out = psi;
    op.advance(out, 1);
    return out;
}

double mean_momentum(const SpinorWavefunction& psi)
{
    const std::size_t n = psi.grid().size();
    detail::FftwBuffer buf(3 * n);
    detail::BatchPlan plan(n, 3, FFTW_FORWARD, buf, FFTW_ESTIMATE);
    std::memcpy(static_cast<void*>(buf.data()), psi.data().data(), sizeof(Complex) * 3 * n);
    plan.execute();
    double weight = 0.0;
    double first = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            const double a = std::norm(buf.data()[j * n + m]);
            weight += a;
            first += psi.grid().momentum(m) * a;
        }
    return weight > 0.0 ? first / weight : 0.0;
}

double max_stable_dt(const SystemParams& params, double budget)
{
    const double w1 = params.omega1() * params.omega1();
    const double w2 = params.omega2() * params.omega2();
    const double root = std::sqrt(w1 * w1 + w2 * w2 + 2.0 * w1 * w2 * std::cos(2.0 * params.phi()));
    const double max_xi2 = 0.5 * (w1 + w2 + root);
    return budget / std::sqrt(max_xi2 + params.delta() * params.delta());
}

namespace {

struct Sampler {
    QuantumRecord& record;

    void push(const Observables& o)
    {
        record.mean_x.values.push_back(o.mean_x);
        record.mean_p.values.push_back(o.mean_p);
        record.norm.values.push_back(o.norm);
        record.energy.values.push_back(o.energy);
        for (int j = 0; j < 3; ++j) {
            record.level_populations[j].values.push_back(o.level_populations[j]);
            record.adiabatic_populations[j].values.push_back(o.adiabatic_populations[j]);
        }
    }
};

QuantumRecord empty_record(const SpinorWavefunction& psi0, double sample_dt)
{
    QuantumRecord r{{}, {}, {}, {}, {}, {}, psi0};
    for (TimeSeries* s : {&r.mean_x, &r.mean_p, &r.norm, &r.energy, &r.level_populations[0],
                          &r.level_populations[1], &r.level_populations[2], &r.adiabatic_populations[0],
                          &r.adiabatic_populations[1], &r.adiabatic_populations[2]})
        s->dt_sample = sample_dt;
    return r;
}

std::size_t step_count(const PropagationConfig& config, const SystemParams& params)
{
    if (!(config.t_final > 0.0))
        throw InvalidArgument("t_final must be positive");
    if (!(config.dt > 0.0))
        throw InvalidArgument("dt must be positive");
    if (config.sample_every == 0)
        throw InvalidArgument("sample_every must be positive");
    if (config.enforce_accuracy_policy && config.dt > max_stable_dt(params, config.accuracy_budget) * (1.0 + 1e-12))
        throw InvalidArgument("dt violates the accuracy policy (dt * max eta > budget)");
    return static_cast<std::size_t>(std::llround(config.t_final / config.dt));
}

} // namespace

QuantumRecord propagate(const SpinorWavefunction& psi0, const SystemParams& params, const PropagationConfig& config)
{
    const std::size_t steps = step_count(config, params);
    SplitOperator op(psi0.grid(), params, config.dt, config.split);
    QuantumRecord record = empty_record(psi0, config.dt * static_cast<double>(config.sample_every));
    Sampler sampler{record};

    SpinorWavefunction& psi = record.final_state;
    sampler.push(op.measure(psi));
    std::size_t done = 0;
    while (done + config.sample_every <= steps) {
        op.advance(psi, config.sample_every);
        done += config.sample_every;
        sampler.push(op.measure(psi));
    }
    op.advance(psi, steps - done);
    return record;
}

SensitivityRecord sensitivity_run(const SpinorWavefunction& psi0, const SystemParams& params, double delta_phi,
                                  const PropagationConfig& config)
{
    const SystemParams shifted = params.with_phi(params.phi() + delta_phi);
    const std::size_t steps = std::max(step_count(config, params), step_count(config, shifted));
    const double sample_dt = config.dt * static_cast<double>(config.sample_every);

    std::array<SplitOperator, 2> ops = {SplitOperator(psi0.grid(), params, config.dt, config.split),
                                        SplitOperator(psi0.grid(), shifted, config.dt, config.split)};
    SensitivityRecord out{.chi = TimeSeries{0.0, sample_dt, {}},
                          .reference = empty_record(psi0, sample_dt),
                          .perturbed = empty_record(psi0, sample_dt)};
    std::array<QuantumRecord*, 2> arms = {&out.reference, &out.perturbed};

    auto sample = [&] {
        for (std::size_t a = 0; a < 2; ++a)
            Sampler{*arms[a]}.push(ops[a].measure(arms[a]->final_state));
        out.chi.values.push_back(std::abs(overlap(out.reference.final_state, out.perturbed.final_state)));
    };

    sample();
    std::size_t done = 0;
    while (done + config.sample_every <= steps) {
        parallel_for(2, [&](std::size_t a) { ops[a].advance(arms[a]->final_state, config.sample_every); });
        done += config.sample_every;
        sample();
    }
    parallel_for(2, [&](std::size_t a) { ops[a].advance(arms[a]->final_state, steps - done); });
    return out;
}

} // namespace latchaos::quantum
