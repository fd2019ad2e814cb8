#include "latchaos/lattice/adiabatic.hpp"

#include "latchaos/errors.hpp"

#include <algorithm>
#include <cmath>

namespace latchaos::lattice {

namespace {

struct FieldAmplitudes {
    double a; // Omega1 sin(kx)
    double b; // Omega2 sin(kx + phi)
};

FieldAmplitudes field_amplitudes(const SystemParams& params, double x)
{
    const double kx = params.k() * x;
    return {params.omega1() * std::sin(kx), params.omega2() * std::sin(kx + params.phi())};
}

// eta - Delta and eta + Delta without cancellation (eta >= |Delta|).
double eta_minus_delta(double xi, double eta, double delta)
{
    return delta > 0.0 ? xi * xi / (eta + delta) : eta - delta;
}

double eta_plus_delta(double xi, double eta, double delta)
{
    return delta < 0.0 ? xi * xi / (eta - delta) : eta + delta;
}

void normalize_column_sign(Eigen::Matrix3d& o)
{
    for (int j = 0; j < 3; ++j) {
        Eigen::Index imax = 0;
        o.col(j).cwiseAbs().maxCoeff(&imax);
        if (o(imax, j) < 0.0)
            o.col(j) = -o.col(j);
    }
}

} // namespace

Eigen::Matrix3d potential_matrix(const SystemParams& params, double x)
{
    const auto [a, b] = field_amplitudes(params, x);
    const double d2 = 2.0 * params.delta();
    Eigen::Matrix3d v;
    v << d2, a, 0.0,
         a, 0.0, b,
         0.0, b, d2;
    return v;
}

Eigen::Matrix3d potential_gradient(const SystemParams& params, double x)
{
    const double kx = params.k() * x;
    const double da = params.omega1() * params.k() * std::cos(kx);
    const double db = params.omega2() * params.k() * std::cos(kx + params.phi());
    Eigen::Matrix3d g;
    g << 0.0, da, 0.0,
         da, 0.0, db,
         0.0, db, 0.0;
    return g;
}

double field_norm(const SystemParams& params, double x)
{
    const auto [a, b] = field_amplitudes(params, x);
    return std::hypot(a, b);
}

double degeneracy_threshold(const SystemParams& params) noexcept
{
    return 1e-9 * std::max(params.omega1(), params.omega2());
}

bool is_degenerate(const SystemParams& params, double x)
{
    return field_norm(params, x) <= degeneracy_threshold(params);
}

AdiabaticFrame adiabatic_frame(const SystemParams& params, double x, ColumnSign sign)
{
    const auto [a, b] = field_amplitudes(params, x);
    const double xi = std::hypot(a, b);
    if (xi <= degeneracy_threshold(params))
        throw DegeneratePoint(x, xi);

    const double delta = params.delta();
    const double eta = std::hypot(xi, delta);
    const double dm = eta_minus_delta(xi, eta, delta);
    const double dp = eta_plus_delta(xi, eta, delta);
    const double n1 = std::hypot(xi, dm);
    const double n3 = std::hypot(xi, dp);

    AdiabaticFrame f;
    f.v1 = delta + eta;
    f.v2 = 2.0 * delta;
    f.v3 = delta - eta;
    f.xi = xi;
    f.eta = eta;
    f.o << a / n1,  b / xi,  a / n3,
           dm / n1, 0.0,    -dp / n3,
           b / n1, -a / xi,  b / n3;
    if (sign == ColumnSign::canonical)
        normalize_column_sign(f.o);
    return f;
}

double dark_state_residual(const SystemParams& params, double x)
{
    const auto f = adiabatic_frame(params, x);
    const auto [a, b] = field_amplitudes(params, x);
    return a * f.o(0, 1) + b * f.o(2, 1);
}

CouplingTerms coupling_terms(const SystemParams& params, double x, double p)
{
    const auto [a, b] = field_amplitudes(params, x);
    const double xi = std::hypot(a, b);
    if (xi <= degeneracy_threshold(params))
        throw DegeneratePoint(x, xi);

    const double delta = params.delta();
    const double k = params.k();
    const double kx = k * x;
    const double eta = std::hypot(xi, delta);
    const double dm = eta_minus_delta(xi, eta, delta);
    const double dp = eta_plus_delta(xi, eta, delta);

    const double cross = p * k * params.omega1() * params.omega2() * std::sin(params.phi());
    const double w1 = params.omega1() * params.omega1();
    const double w2 = params.omega2() * params.omega2();

    CouplingTerms t;
    // 2 xi^2 (eta^2 -+ Delta eta) = 2 xi^2 eta (eta -+ Delta)
    t.t12 = cross / (xi * std::sqrt(2.0 * eta * dm));
    t.t23 = cross / (xi * std::sqrt(2.0 * eta * dp));
    t.t13 = p * k * delta * (w1 * std::sin(2.0 * kx) + w2 * std::sin(2.0 * kx + 2.0 * params.phi()))
          / (4.0 * eta * eta * xi);
    return t;
}

EigenSlopes eigen_slopes(const SystemParams& params, double x)
{
    const double kx = params.k() * x;
    const double w1 = params.omega1() * params.omega1();
    const double w2 = params.omega2() * params.omega2();
    // xi xi' = (1/2) d(xi^2)/dx
    const double xi_dxi = 0.5 * params.k() * (w1 * std::sin(2.0 * kx) + w2 * std::sin(2.0 * kx + 2.0 * params.phi()));
    const double eta = std::hypot(field_norm(params, x), params.delta());
    const double deta = xi_dxi / eta;
    return {deta, -deta};
}

GapAmplitude gap_and_amplitude(const SystemParams& params)
{
    const double w1 = params.omega1() * params.omega1();
    const double w2 = params.omega2() * params.omega2();
    const double s = std::sin(params.phi());
    const double sum = w1 + w2;
    const double root = std::sqrt(w1 * w1 + w2 * w2 + 2.0 * w1 * w2 * std::cos(2.0 * params.phi()));
    // (sum - root)/2 rewritten as a ratio; sum^2 - root^2 = 4 w1 w2 sin^2(phi)
    const double a2 = 2.0 * w1 * w2 * s * s / (sum + root);
    const double delta = params.delta();
    const double r = std::sqrt(a2 + delta * delta);
    const double gap = delta > 0.0 ? a2 / (r + delta) : r - delta;
    return {gap, std::sqrt(a2)};
}

double adiabaticity_ratio(const SystemParams& params, double p)
{
    const auto [gap, amp] = gap_and_amplitude(params);
    if (amp <= degeneracy_threshold(params) || !(gap > 0.0))
        throw UndefinedRatio("adiabaticity ratio undefined for phi = 0 mod pi");
    const double delta = params.delta();
    const double num = p * params.k() * params.omega1() * params.omega2() * std::sin(params.phi());
    const double den = std::sqrt(2.0) * std::pow(amp * amp + delta * delta, 0.25) * amp * std::pow(gap, 1.5);
    return num / den;
}

} // namespace latchaos::lattice
