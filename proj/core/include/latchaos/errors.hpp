#pragma once

#include <stdexcept>
#include <string>

namespace latchaos {

/// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field-strength norm xi fell below the degeneracy threshold; the
/// adiabatic basis is not defined there.
class DegeneratePoint : public Error {
public:
    DegeneratePoint(double x, double xi)
        : Error("degenerate point at x=" + std::to_string(x) + " (xi=" + std::to_string(xi) + ")"),
          x_(x), xi_(xi) {}
    double x() const noexcept { return x_; }
    double xi() const noexcept { return xi_; }

private:
    double x_;
    double xi_;
};

class UndefinedRatio : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class UnresolvableWavepacket : public Error {
public:
    using Error::Error;
};

class MomentumOverflow : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

/// The adaptive controller could not meet the tolerance at the minimum step.
class StepFailure : public Error {
public:
    StepFailure(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

class TooShort : public Error {
public:
    using Error::Error;
};

class DegenerateWindow : public Error {
public:
    using Error::Error;
};

} // namespace latchaos
