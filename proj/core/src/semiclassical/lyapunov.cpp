#include "latchaos/semiclassical/lyapunov.hpp"

#include <cmath>

namespace latchaos::semiclassical {

LyapunovEstimate lyapunov(const TrajectoryState& state0, const lattice::SystemParams& params,
                          const LyapunovConfig& config)
{
    if (!(config.delta0 > 0.0) || !(config.renorm_interval > 0.0))
        throw InvalidArgument("delta0 and renorm_interval must be positive");
    if (!(config.discard_fraction >= 0.0 && config.discard_fraction < 1.0))
        throw InvalidArgument("discard fraction must lie in [0, 1)");
    const auto intervals = static_cast<std::size_t>(std::floor(config.t_total / config.renorm_interval + 1e-9));
    if (intervals < 10)
        throw InvalidArgument("t_total must cover at least 10 renormalizations");

    using Pair = std::array<double, 16>;
    auto rhs = [&params](double, const Pair& y) {
        PackedState a;
        PackedState b;
        std::copy_n(y.begin(), 8, a.begin());
        std::copy_n(y.begin() + 8, 8, b.begin());
        const PackedState da = ehrenfest_rhs_packed(a, params);
        const PackedState db = ehrenfest_rhs_packed(b, params);
        Pair out;
        std::copy(da.begin(), da.end(), out.begin());
        std::copy(db.begin(), db.end(), out.begin() + 8);
        return out;
    };
    Dopri5<16, decltype(rhs)> stepper(rhs, config.tolerance);

    Pair y;
    const PackedState ref = pack(state0);
    std::copy(ref.begin(), ref.end(), y.begin());
    std::copy(ref.begin(), ref.end(), y.begin() + 8);
    y[8] += config.delta0;

    LyapunovEstimate est{};
    est.growth_log.dt_sample = config.renorm_interval;
    est.growth_log.values.reserve(intervals + 1);
    double log_sep = std::log(config.delta0);
    est.growth_log.values.push_back(log_sep);

    double t = 0.0;
    for (std::size_t i = 1; i <= intervals; ++i) {
        stepper.advance_to(t, y, static_cast<double>(i) * config.renorm_interval);
        const double dsep = std::hypot(y[8] - y[0], y[9] - y[1]);
        if (!(dsep > 0.0) || !std::isfinite(dsep))
            throw StepFailure("trajectory separation collapsed", t);
        log_sep += std::log(dsep / config.delta0);
        est.growth_log.values.push_back(log_sep);
        const double scale = config.delta0 / dsep;
        for (std::size_t j = 0; j < 8; ++j)
            y[8 + j] = y[j] + scale * (y[8 + j] - y[j]);
        stepper.reset();
    }

    const auto first = static_cast<std::size_t>(std::ceil(config.discard_fraction * static_cast<double>(intervals)));
    est.renorm_count = intervals;
    est.fit_start = est.growth_log.time(first);
    est.fit_end = est.growth_log.time(intervals);
    // mean of ln(growth)/interval over the window telescopes to this difference
    est.lambda = (est.growth_log.values[intervals] - est.growth_log.values[first]) / (est.fit_end - est.fit_start);
    return est;
}

} // namespace latchaos::semiclassical
