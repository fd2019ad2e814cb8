#pragma once

#include "latchaos/lattice/params.hpp"
#include "latchaos/quantum/grid.hpp"
#include "latchaos/quantum/wavefunction.hpp"
#include "latchaos/semiclassical/ensemble.hpp"
#include "latchaos/semiclassical/lyapunov.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace latchaos::cli {

/// Bad configuration: unknown section/key, unparsable value or a value that
/// violates a type invariant. line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& key, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

struct RunSettings {
    double t_final = 0.7;
    double dt = 2e-6;
    std::size_t sample_every = 50;
    double tolerance = 1e-12;          // single trajectories and Lyapunov pairs
    double ensemble_tolerance = 1e-8;  // ensemble members (only averages are used)
    double sample_dt = 1e-4;           // classical sampling interval
    std::uint64_t seed = 20020101;
    std::size_t ensemble_count = 2000;
    double delta_phi;                  // pi / 400
    std::vector<double> phases;        // 0, pi/4, pi/2
    RunSettings();
};

struct ScanSettings {
    std::size_t x_points = 1000;
    double momentum = 25.0;
};

struct TrajectorySettings {
    double x0 = 0.0;
    double p0 = 25.0;
};

struct OutputSettings {
    std::string directory = "latchaos-out";
    bool emit_plots = true;
};

struct RunConfig {
    lattice::SystemParams system = lattice::SystemParams::reference(0.0);
    lattice::NaturalUnits units = lattice::NaturalUnits::helium4();
    quantum::SpatialGrid grid = quantum::SpatialGrid::reference();
    quantum::GaussianPacketSpec initial{};
    RunSettings run{};
    semiclassical::LyapunovConfig lyapunov{};
    ScanSettings scan{};
    TrajectorySettings trajectory{};
    OutputSettings output{};

    semiclassical::EnsembleSpec ensemble_spec() const;
    semiclassical::TrajectoryState trajectory_start() const;
};

/// Parses the text of a configuration file. Every key is optional and
/// defaults to the reference experiment; unknown sections or keys are errors.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Fully resolved configuration as section -> key -> canonical value text.
/// Feeding the rendered form back through parse_config reproduces the config.
using ResolvedConfig = std::map<std::string, std::map<std::string, std::string>>;
ResolvedConfig resolve(const RunConfig& config);
std::string render_ini(const ResolvedConfig& resolved);

/// Accepts plain numbers and multiples of pi: "0.25pi", "pi/400", "-pi".
double parse_real(const std::string& text);

} // namespace latchaos::cli
