#include "latchaos/cli/config.hpp"

#include "latchaos/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>

namespace latchaos::cli {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& key,
                         const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}: {}", source, line, key, message)
                                  : fmt::format("{}: {}: {}", source, key, message)),
      line_(line), key_(key)
{
}

RunSettings::RunSettings()
    : delta_phi(std::numbers::pi / 400.0), phases{0.0, 0.25 * std::numbers::pi, 0.5 * std::numbers::pi}
{
}

semiclassical::EnsembleSpec RunConfig::ensemble_spec() const
{
    semiclassical::EnsembleSpec spec;
    spec.count = run.ensemble_count;
    spec.mean_x = initial.mean_x;
    spec.mean_p = initial.mean_p;
    spec.sigma_x = initial.sigma_x;
    spec.sigma_p = initial.sigma_p;
    for (int i = 0; i < 3; ++i)
        spec.internal[i] = initial.internal(i);
    spec.seed = run.seed;
    return spec;
}

semiclassical::TrajectoryState RunConfig::trajectory_start() const
{
    semiclassical::TrajectoryState s;
    s.x = trajectory.x0;
    s.p = trajectory.p0;
    for (int i = 0; i < 3; ++i)
        s.c[i] = initial.internal(i);
    return s;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> plain_number(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    const char* first = s.data();
    if (*first == '+')
        ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

struct Entry {
    std::string value;
    std::size_t line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& schema()
{
    static const std::map<std::string, std::vector<std::string>> s = {
        {"system", {"omega1", "omega2", "delta", "k", "phi"}},
        {"units", {"wavelength", "mass"}},
        {"grid", {"n", "periods"}},
        {"initial", {"mean_x", "mean_p", "sigma_x", "sigma_p", "internal"}},
        {"run", {"t_final", "dt", "sample_every", "tolerance", "ensemble_tolerance", "sample_dt", "seed",
                 "ensemble_count", "delta_phi", "phases"}},
        {"lyapunov", {"delta0", "renorm_interval", "t_total", "discard_fraction"}},
        {"scan", {"x_points", "momentum"}},
        {"trajectory", {"x0", "p0"}},
        {"output", {"directory", "emit_plots"}},
    };
    return s;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

std::complex<double> parse_complex(const std::string& text)
{
    if (auto v = plain_number(text))
        return {*v, 0.0};
    // "a+bi", "a-bi", "bi", "-i"
    if (!text.empty() && text.back() == 'i') {
        const std::string body = text.substr(0, text.size() - 1);
        std::size_t split = 0;
        for (std::size_t i = body.size(); i-- > 1;)
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        const std::string re = body.substr(0, split);
        const std::string im = body.substr(split);
        const auto re_part = re.empty() ? std::optional(0.0) : plain_number(re);
        const auto im_part = im.empty() || im == "+" ? std::optional(1.0) : im == "-" ? std::optional(-1.0) : plain_number(im);
        if (re_part && im_part)
            return {*re_part, *im_part};
    }
    throw InvalidArgument("not a complex number: '" + text + "'");
}

class Reader {
public:
    Reader(std::map<std::string, Section> sections, std::string source)
        : sections_(std::move(sections)), source_(std::move(source))
    {
    }

    template <class T, class Parse>
    void get(const std::string& section, const std::string& key, T& target, Parse parse)
    {
        const auto s = sections_.find(section);
        if (s == sections_.end())
            return;
        const auto e = s->second.find(key);
        if (e == s->second.end())
            return;
        try {
            target = parse(e->second.value);
        } catch (const std::exception& ex) {
            throw ConfigError(source_, e->second.line, section + "." + key, ex.what());
        }
    }

    void real(const std::string& section, const std::string& key, double& target)
    {
        get(section, key, target, parse_real);
    }

    template <class Int>
    void integer(const std::string& section, const std::string& key, Int& target)
    {
        get(section, key, target, [](const std::string& v) {
            Int out{};
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc{} || ptr != v.data() + v.size())
                throw InvalidArgument("not a non-negative integer: '" + v + "'");
            return out;
        });
    }

    bool has(const std::string& section, const std::string& key) const
    {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::size_t line(const std::string& section, const std::string& key) const
    {
        const auto s = sections_.find(section);
        if (s == sections_.end())
            return 0;
        const auto e = s->second.find(key);
        return e == s->second.end() ? 0 : e->second.line;
    }

    // Reports an invariant violation at the line of the first key of `keys` present.
    [[noreturn]] void fail(const std::string& section, std::initializer_list<const char*> keys,
                           const std::string& message) const
    {
        for (const char* k : keys)
            if (has(section, k))
                throw ConfigError(source_, line(section, k), section + "." + k, message);
        throw ConfigError(source_, 0, section, message);
    }

private:
    std::map<std::string, Section> sections_;
    std::string source_;
};

} // namespace

double parse_real(const std::string& raw)
{
    const std::string text = trim(raw);
    if (auto v = plain_number(text)) {
        if (!std::isfinite(*v))
            throw InvalidArgument("value must be finite: '" + text + "'");
        return *v;
    }
    static const std::regex re(R"(^([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-])?\s*\*?\s*pi(?:\s*/\s*([0-9.eE+-]+))?$)");
    std::smatch m;
    if (std::regex_match(text, m, re)) {
        double coef = 1.0;
        if (m[1].matched) {
            const std::string c = m[1].str();
            if (c == "-")
                coef = -1.0;
            else if (c != "+") {
                const auto v = plain_number(c);
                if (!v)
                    throw InvalidArgument("not a number: '" + text + "'");
                coef = *v;
            }
        }
        double den = 1.0;
        if (m[2].matched) {
            const auto v = plain_number(m[2].str());
            if (!v || *v == 0.0)
                throw InvalidArgument("bad denominator in '" + text + "'");
            den = *v;
        }
        return coef * std::numbers::pi / den;
    }
    throw InvalidArgument("not a number: '" + text + "'");
}

RunConfig parse_config(const std::string& text, const std::string& source)
{
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source, lineno, line, "malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (!schema().count(current))
                throw ConfigError(source, lineno, current, "unknown section");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source, lineno, line, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (current.empty())
            throw ConfigError(source, lineno, key, "key outside of any section");
        const auto& allowed = schema().at(current);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(source, lineno, current + "." + key, "unknown key");
        if (value.empty())
            throw ConfigError(source, lineno, current + "." + key, "missing value");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (!sections[current].emplace(key, Entry{value, lineno}).second)
            throw ConfigError(source, lineno, current + "." + key, "duplicate key");
    }

    Reader r(std::move(sections), source);
    RunConfig cfg;

    double omega1 = 6e3, omega2 = 7e3, delta = 1.5e4, k = lattice::two_pi, phi = 0.0;
    r.real("system", "omega1", omega1);
    r.real("system", "omega2", omega2);
    r.real("system", "delta", delta);
    r.real("system", "k", k);
    r.real("system", "phi", phi);
    try {
        cfg.system = lattice::SystemParams(omega1, omega2, delta, phi, k);
    } catch (const InvalidArgument& e) {
        r.fail("system", {"omega1", "omega2", "k"}, e.what());
    }

    double wavelength = lattice::constants::helium4_wavelength, mass = lattice::constants::helium4_mass;
    r.real("units", "wavelength", wavelength);
    r.real("units", "mass", mass);
    try {
        cfg.units = lattice::NaturalUnits(wavelength, mass);
    } catch (const InvalidArgument& e) {
        r.fail("units", {"wavelength", "mass"}, e.what());
    }

    std::size_t n = 4096;
    int periods = 8;
    r.integer("grid", "n", n);
    r.integer("grid", "periods", periods);
    try {
        cfg.grid = quantum::SpatialGrid(n, periods);
    } catch (const InvalidArgument& e) {
        r.fail("grid", {"n", "periods"}, e.what());
    }

    auto& ini = cfg.initial;
    r.real("initial", "mean_x", ini.mean_x);
    r.real("initial", "mean_p", ini.mean_p);
    r.real("initial", "sigma_x", ini.sigma_x);
    r.real("initial", "sigma_p", ini.sigma_p);
    r.get("initial", "internal", ini.internal, [](const std::string& v) {
        const auto items = split_list(v);
        if (items.size() != 3)
            throw InvalidArgument("expected three amplitudes");
        Eigen::Vector3cd out;
        for (int i = 0; i < 3; ++i)
            out(i) = parse_complex(items[static_cast<std::size_t>(i)]);
        return out;
    });
    if (!(ini.sigma_x > 0.0) || !(ini.sigma_p > 0.0))
        r.fail("initial", {"sigma_x", "sigma_p"}, "spreads must be positive");
    if (std::abs(ini.internal.squaredNorm() - 1.0) > 1e-12)
        r.fail("initial", {"internal"}, "internal state must be unit-norm");

    auto& run = cfg.run;
    r.real("run", "t_final", run.t_final);
    r.real("run", "dt", run.dt);
    r.integer("run", "sample_every", run.sample_every);
    r.real("run", "tolerance", run.tolerance);
    r.real("run", "ensemble_tolerance", run.ensemble_tolerance);
    r.real("run", "sample_dt", run.sample_dt);
    r.integer("run", "seed", run.seed);
    r.integer("run", "ensemble_count", run.ensemble_count);
    r.real("run", "delta_phi", run.delta_phi);
    r.get("run", "phases", run.phases, [](const std::string& v) {
        std::vector<double> out;
        for (const auto& item : split_list(v))
            out.push_back(parse_real(item));
        if (out.empty())
            throw InvalidArgument("empty phase list");
        return out;
    });
    if (!(run.t_final > 0.0))
        r.fail("run", {"t_final"}, "t_final must be positive");
    if (!(run.dt > 0.0))
        r.fail("run", {"dt"}, "dt must be positive");
    if (run.sample_every == 0)
        r.fail("run", {"sample_every"}, "sample_every must be at least 1");
    if (!(run.tolerance > 0.0) || !(run.ensemble_tolerance > 0.0))
        r.fail("run", {"tolerance", "ensemble_tolerance"}, "tolerances must be positive");
    if (!(run.sample_dt > 0.0))
        r.fail("run", {"sample_dt"}, "sample_dt must be positive");
    if (run.ensemble_count == 0)
        r.fail("run", {"ensemble_count"}, "ensemble needs at least one member");

    auto& ly = cfg.lyapunov;
    r.real("lyapunov", "delta0", ly.delta0);
    r.real("lyapunov", "renorm_interval", ly.renorm_interval);
    r.real("lyapunov", "t_total", ly.t_total);
    r.real("lyapunov", "discard_fraction", ly.discard_fraction);
    ly.tolerance = semiclassical::Tolerance::from_relative(run.tolerance);
    if (!(ly.delta0 > 0.0) || !(ly.renorm_interval > 0.0))
        r.fail("lyapunov", {"delta0", "renorm_interval"}, "delta0 and renorm_interval must be positive");
    if (ly.t_total < 10.0 * ly.renorm_interval * (1.0 - 1e-12))
        r.fail("lyapunov", {"t_total", "renorm_interval"}, "t_total must cover at least 10 renormalizations");
    if (!(ly.discard_fraction >= 0.0 && ly.discard_fraction < 1.0))
        r.fail("lyapunov", {"discard_fraction"}, "discard_fraction must lie in [0, 1)");

    r.integer("scan", "x_points", cfg.scan.x_points);
    r.real("scan", "momentum", cfg.scan.momentum);
    if (cfg.scan.x_points < 2)
        r.fail("scan", {"x_points"}, "x_points must be at least 2");

    cfg.trajectory = {ini.mean_x, ini.mean_p};
    r.real("trajectory", "x0", cfg.trajectory.x0);
    r.real("trajectory", "p0", cfg.trajectory.p0);

    r.get("output", "directory", cfg.output.directory, [](const std::string& v) { return v; });
    r.get("output", "emit_plots", cfg.output.emit_plots, [](const std::string& v) {
        if (v == "true" || v == "yes" || v == "1")
            return true;
        if (v == "false" || v == "no" || v == "0")
            return false;
        throw InvalidArgument("expected true or false, got '" + v + "'");
    });
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path, 0, "file", "cannot open configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string complex_text(std::complex<double> c)
{
    if (c.imag() == 0.0)
        return num(c.real());
    return fmt::format("{:.17g}{:+.17g}i", c.real(), c.imag());
}

} // namespace

ResolvedConfig resolve(const RunConfig& c)
{
    ResolvedConfig r;
    r["system"] = {{"omega1", num(c.system.omega1())}, {"omega2", num(c.system.omega2())},
                   {"delta", num(c.system.delta())}, {"k", num(c.system.k())}, {"phi", num(c.system.phi())}};
    r["units"] = {{"wavelength", num(c.units.wavelength())}, {"mass", num(c.units.mass())}};
    r["grid"] = {{"n", std::to_string(c.grid.size())}, {"periods", std::to_string(c.grid.periods())}};
    r["initial"] = {{"mean_x", num(c.initial.mean_x)}, {"mean_p", num(c.initial.mean_p)},
                    {"sigma_x", num(c.initial.sigma_x)}, {"sigma_p", num(c.initial.sigma_p)},
                    {"internal", fmt::format("{}, {}, {}", complex_text(c.initial.internal(0)),
                                             complex_text(c.initial.internal(1)), complex_text(c.initial.internal(2)))}};
    std::string phases;
    for (double p : c.run.phases)
        phases += (phases.empty() ? "" : ", ") + num(p);
    r["run"] = {{"t_final", num(c.run.t_final)}, {"dt", num(c.run.dt)},
                {"sample_every", std::to_string(c.run.sample_every)}, {"tolerance", num(c.run.tolerance)},
                {"ensemble_tolerance", num(c.run.ensemble_tolerance)}, {"sample_dt", num(c.run.sample_dt)},
                {"seed", std::to_string(c.run.seed)}, {"ensemble_count", std::to_string(c.run.ensemble_count)},
                {"delta_phi", num(c.run.delta_phi)}, {"phases", phases}};
    r["lyapunov"] = {{"delta0", num(c.lyapunov.delta0)}, {"renorm_interval", num(c.lyapunov.renorm_interval)},
                     {"t_total", num(c.lyapunov.t_total)}, {"discard_fraction", num(c.lyapunov.discard_fraction)}};
    r["scan"] = {{"x_points", std::to_string(c.scan.x_points)}, {"momentum", num(c.scan.momentum)}};
    r["trajectory"] = {{"x0", num(c.trajectory.x0)}, {"p0", num(c.trajectory.p0)}};
    r["output"] = {{"directory", c.output.directory}, {"emit_plots", c.output.emit_plots ? "true" : "false"}};
    return r;
}

std::string render_ini(const ResolvedConfig& resolved)
{
    std::string out;
    for (const auto& [section, keys] : resolved) {
        out += fmt::format("[{}]\n", section);
        for (const auto& [k, v] : keys)
            out += fmt::format("{} = {}\n", k, v);
        out += "\n";
    }
    return out;
}

} // namespace latchaos::cli
