#pragma once

#include "latchaos/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace latchaos::semiclassical {

struct Tolerance {
    // 1e-10 leaves ~5e-7 norm drift over t=0.7 at the reference parameters
    double relative = 1e-12;
    double absolute = 1e-14;

    /// absolute = relative / 100
    static Tolerance from_relative(double rtol) { return {rtol, rtol * 1e-2}; }
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL and an elementary error-per-step controller
/// (Hairer, Norsett & Wanner, "Solving ODEs I", II.4). Integrates forward or
/// backward; the step size is carried across advance_to() calls.
template <std::size_t N, class Rhs>
class Dopri5 {
public:
    using State = std::array<double, N>;

    Dopri5(Rhs rhs, Tolerance tol) : rhs_(std::move(rhs)), tol_(tol)
    {
        if (!(tol.relative > 0.0) || !(tol.absolute > 0.0))
            throw InvalidArgument("integration tolerances must be positive");
    }

    const StepStats& stats() const noexcept { return stats_; }

    /// Forget the cached derivative; call after modifying the state externally.
    void reset() noexcept { have_k1_ = false; }

    void advance_to(double& t, State& y, double t_end)
    {
        // intervals below round-off of t are absorbed instead of stepped
        if (std::abs(t_end - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(t_end))) {
            t = t_end;
            return;
        }
        const double dir = t_end > t ? 1.0 : -1.0;
        if (!have_k1_) {
            k1_ = eval(t, y);
            have_k1_ = true;
        }
        if (h_ == 0.0 || h_ * dir < 0.0)
            h_ = dir * initial_step(t, y);

        bool last = false;
        while (!last) {
            double h = h_;
            if ((t + h - t_end) * dir >= 0.0) {
                h = t_end - t;
                last = true;
            }
            const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
            if (std::abs(h) < h_floor)
                throw StepFailure("step size underflow at t=" + std::to_string(t), t);

            State y_new;
            State err;
            State k7;
            attempt(t, y, h, y_new, err, k7);
            const double e = error_norm(y, y_new, err);
            if (e <= 1.0) {
                ++stats_.accepted;
                t = last ? t_end : t + h;
                y = y_new;
                k1_ = k7;
                const double grow = e == 0.0 ? max_factor : std::min(max_factor, safety * std::pow(e, -0.2));
                // keep the natural step for the next call when the last one was clipped
                if (!last || std::abs(h) >= std::abs(h_))
                    h_ = h * std::max(1.0, grow);
            } else {
                ++stats_.rejected;
                last = false;
                h_ = h * std::max(min_factor, safety * std::pow(e, -0.2));
                if (!std::isfinite(e))
                    h_ = h * min_factor;
            }
        }
    }

private:
    static constexpr double safety = 0.9;
    static constexpr double min_factor = 0.2;
    static constexpr double max_factor = 10.0;

    State eval(double t, const State& y)
    {
        ++stats_.evaluations;
        return rhs_(t, y);
    }

    void attempt(double t, const State& y, double h, State& y_new, State& err, State& k7)
    {
        constexpr double a21 = 1.0 / 5.0;
        constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
        constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
        constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                         a54 = -212.0 / 729.0;
        constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                         a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
        constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                         b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
        constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                         e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

        const State& k1 = k1_;
        State tmp;
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * a21 * k1[i];
        const State k2 = eval(t + h / 5.0, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State k3 = eval(t + 3.0 * h / 10.0, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State k4 = eval(t + 4.0 * h / 5.0, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State k5 = eval(t + 8.0 * h / 9.0, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const State k6 = eval(t + h, tmp);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = eval(t + h, y_new);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

    double error_norm(const State& y, const State& y_new, const State& err) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = tol_.absolute + tol_.relative * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double r = err[i] / sc;
            s += r * r;
        }
        return std::sqrt(s / static_cast<double>(N));
    }

    // Hairer's starting-step heuristic.
    double initial_step(double t, const State& y)
    {
        auto scale = [&](std::size_t i) { return tol_.absolute + tol_.relative * std::abs(y[i]); };
        double d0 = 0.0;
        double d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            d0 += (y[i] / scale(i)) * (y[i] / scale(i));
            d1 += (k1_[i] / scale(i)) * (k1_[i] / scale(i));
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;

        State y1;
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] + h0 * k1_[i];
        const State f1 = eval(t + h0, y1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double r = (f1[i] - k1_[i]) / scale(i);
            d2 += r * r;
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min(100.0 * h0, h1);
    }

    Rhs rhs_;
    Tolerance tol_;
    StepStats stats_{};
    State k1_{};
    bool have_k1_ = false;
    double h_ = 0.0;
};

} // namespace latchaos::semiclassical
