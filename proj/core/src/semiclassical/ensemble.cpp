#include "latchaos/semiclassical/ensemble.hpp"

#include "latchaos/parallel.hpp"

#include <random>

namespace latchaos::semiclassical {

namespace {

constexpr std::size_t block_size = 32;

void validate(const EnsembleSpec& spec)
{
    if (spec.count == 0)
        throw InvalidArgument("ensemble needs at least one member");
    if (!(spec.sigma_x > 0.0) || !(spec.sigma_p > 0.0))
        throw InvalidArgument("ensemble spreads must be positive");
    const double n = std::norm(spec.internal[0]) + std::norm(spec.internal[1]) + std::norm(spec.internal[2]);
    if (std::abs(n - 1.0) > 1e-9)
        throw InvalidArgument("internal state must be unit-norm");
}

} // namespace

TrajectoryState sample_member(const EnsembleSpec& spec, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    TrajectoryState s;
    s.x = spec.mean_x + spec.sigma_x * normal(rng);
    s.p = spec.mean_p + spec.sigma_p * normal(rng);
    s.c = spec.internal;
    return s;
}

EnsembleResult ensemble_mean_p(const EnsembleSpec& spec, const lattice::SystemParams& params, double t_final,
                               Tolerance tolerance, double sample_dt)
{
    validate(spec);
    const std::size_t blocks = (spec.count + block_size - 1) / block_size;
    std::vector<std::vector<double>> sum_p(blocks);
    std::vector<std::vector<double>> sum_x(blocks);

    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t first = b * block_size;
        const std::size_t last = std::min(spec.count, first + block_size);
        for (std::size_t i = first; i < last; ++i) {
            TrajectoryRecord rec;
            try {
                rec = integrate(sample_member(spec, i), params, t_final, tolerance, sample_dt);
            } catch (const StepFailure& e) {
                throw StepFailure("ensemble member " + std::to_string(i) + ": " + e.what(), e.time());
            }
            if (sum_p[b].empty()) {
                sum_p[b] = rec.p.values;
                sum_x[b] = rec.x.values;
            } else {
                for (std::size_t j = 0; j < rec.p.size(); ++j) {
                    sum_p[b][j] += rec.p.values[j];
                    sum_x[b][j] += rec.x.values[j];
                }
            }
        }
    });

    EnsembleResult out{{0.0, t_final > 0.0 ? sample_dt : -sample_dt, sum_p[0]},
                       {0.0, t_final > 0.0 ? sample_dt : -sample_dt, sum_x[0]}, spec.count};
    for (std::size_t b = 1; b < blocks; ++b)
        for (std::size_t j = 0; j < out.mean_p.size(); ++j) {
            out.mean_p.values[j] += sum_p[b][j];
            out.mean_x.values[j] += sum_x[b][j];
        }
    const double inv = 1.0 / static_cast<double>(spec.count);
    for (std::size_t j = 0; j < out.mean_p.size(); ++j) {
        out.mean_p.values[j] *= inv;
        out.mean_x.values[j] *= inv;
    }
    return out;
}

} // namespace latchaos::semiclassical
