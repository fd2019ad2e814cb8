#include "latchaos/cli/commands.hpp"
#include "latchaos/cli/output.hpp"
#include "latchaos/errors.hpp"

#include "CLI11.hpp"
#include <fmt/format.h>

#include <functional>
#include <map>

namespace latchaos::cli {

int run(int argc, char** argv)
{
    using Command = std::function<CommandResult(const RunConfig&, const CommandOptions&)>;
    struct Entry {
        Command fn;
        const char* help;
    };
    const std::map<std::string, Entry> commands = {
        {"adiabatic-scan", {cmd_adiabatic_scan, "eigen-potentials, couplings, gap and adiabaticity ratio"}},
        {"quantum", {cmd_quantum, "split-operator wavepacket propagation"}},
        {"ensemble", {cmd_ensemble, "Monte Carlo Ehrenfest ensemble mean momentum"}},
        {"trajectory", {cmd_trajectory, "single Ehrenfest trajectory"}},
        {"sensitivity", {cmd_sensitivity, "overlap of wavepackets evolved at phi and phi + delta_phi"}},
        {"lyapunov", {cmd_lyapunov, "largest Lyapunov exponent of the Ehrenfest flow"}},
        {"figures", {cmd_figures, "every run at each configured phase, plus plots and checks"}},
    };

    CLI::App app{"Three-level atom in two phase-shifted standing waves"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1, 1);

    std::string config_path;
    double phi = 0.0;
    std::string out_dir;
    bool check = false;
    bool quiet = false;
    for (const auto& [name, entry] : commands) {
        auto* sub = app.add_subcommand(name, entry.help);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--phi", phi, "relative phase in radians");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--quiet", quiet, "no progress output");
        if (name == "figures")
            sub->add_flag("--check", check, "exit 4 unless every reproduction check passes");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::success : exit_code::config;
    }

    const CLI::App* sub = app.get_subcommands().front();
    CommandOptions opts;
    if (sub->count("--phi"))
        opts.phi = phi;
    if (sub->count("--out"))
        opts.out_dir = out_dir;
    opts.check = check;
    opts.verbose = !quiet;

    try {
        const RunConfig cfg = load_config(config_path);
        const auto result = commands.at(sub->get_name()).fn(cfg, opts);
        if (opts.check) {
            for (const auto& c : result.checks)
                fmt::print("{} {} ({})\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
            if (!result.all_passed())
                return exit_code::check;
        }
        return exit_code::success;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_code::config;
    } catch (const InvalidArgument& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return exit_code::config;
    } catch (const StepFailure& e) {
        fmt::print(stderr, "numerical failure at t={}: {}\n", e.time(), e.what());
        return exit_code::numerical;
    } catch (const Error& e) {
        // UnresolvableWavepacket, MomentumOverflow, DegeneratePoint, ...
        fmt::print(stderr, "numerical failure: {}\n", e.what());
        return exit_code::numerical;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_code::failure;
    }
}

} // namespace latchaos::cli
