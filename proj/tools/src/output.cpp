#include "latchaos/cli/output.hpp"

#include "latchaos/errors.hpp"

#include <fmt/format.h>
#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#ifndef LATCHAOS_VERSION
#define LATCHAOS_VERSION "unknown"
#endif

namespace latchaos::cli {

namespace fs = std::filesystem;

void Table::add(std::string name, std::vector<double> values)
{
    if (!columns.empty() && values.size() != columns.front().size())
        throw InvalidArgument("column '" + name + "' has a different length");
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
}

Table Table::from_series(const std::string& value_name, const TimeSeries& series)
{
    Table t;
    std::vector<double> time(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        time[i] = series.time(i);
    t.add("t", std::move(time));
    t.add(value_name, series.values);
    return t;
}

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.front().size(); }

std::string format_csv(const Table& table)
{
    fmt::memory_buffer out;
    for (std::size_t j = 0; j < table.header.size(); ++j)
        fmt::format_to(std::back_inserter(out), "{}{}", j ? "," : "", table.header[j]);
    out.push_back('\n');
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.columns.size(); ++j)
            fmt::format_to(std::back_inserter(out), "{}{:.17g}", j ? "," : "", table.columns[j][i]);
        out.push_back('\n');
    }
    return fmt::to_string(out);
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error("cannot write " + path.string());
    f << text;
    if (!f)
        throw Error("write failed for " + path.string());
}

void write_csv(const fs::path& path, const Table& table) { write_text(path, format_csv(table)); }

namespace {

// 1, 2 or 5 times a power of ten
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw)
            return m * mag;
    return 10.0 * mag;
}

std::string tick_label(double v, double step)
{
    if (std::abs(v) < 1e-9 * step)
        v = 0.0;
    const int decimals = std::max(0, -static_cast<int>(std::floor(std::log10(step))));
    return fmt::format("{:.{}f}", v, decimals);
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Sink {
    fmt::memory_buffer& buf;
    template <class... A>
    void put(fmt::format_string<A...> f, A&&... a)
    {
        fmt::format_to(std::back_inserter(buf), f, std::forward<A>(a)...);
    }
};

constexpr std::array<const char*, 6> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

} // namespace

std::string render_svg(const Plot& plot)
{
    constexpr double width = 820, height = 500;
    constexpr double left = 80, right = 20, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymin -= 0.5 * std::max(1.0, std::abs(ymin));
        ymax += 0.5 * std::max(1.0, std::abs(ymax));
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    fmt::memory_buffer buf;
    auto out = Sink{buf};
    out.put(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">)"
        "\n",
        width, height, width, height);
    out.put(R"(<rect width="100%" height="100%" fill="white"/>)" "\n");
    out.put(R"(<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>)" "\n", width / 2, escape(plot.title));

    const double xs = nice_step(xmax - xmin, 8), ys = nice_step(ymax - ymin, 6);
    for (double v = std::ceil(xmin / xs) * xs; v <= xmax + 1e-9 * xs; v += xs) {
        out.put(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="#e5e5e5"/>)" "\n", sx(v), top, top + ph);
        out.put(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="middle">{}</text>)" "\n", sx(v), top + ph + 18, tick_label(v, xs));
    }
    for (double v = std::ceil(ymin / ys) * ys; v <= ymax + 1e-9 * ys; v += ys) {
        out.put(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{2:.2f}" y2="{1:.2f}" stroke="#e5e5e5"/>)" "\n", left, sy(v), left + pw);
        out.put(R"(<text x="{:.2f}" y="{:.2f}" text-anchor="end">{}</text>)" "\n", left - 6, sy(v) + 4, tick_label(v, ys));
    }
    out.put(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)" "\n", left, top, pw, ph);
    out.put(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)" "\n", left + pw / 2, height - 15, escape(plot.x_label));
    out.put(R"svg(<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>)svg" "\n", top + ph / 2,
        escape(plot.y_label));

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = palette[k % palette.size()];
        // thin very long series to at most ~4 points per pixel column
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / static_cast<std::size_t>(4 * pw));
        out.put(R"(<polyline fill="none" stroke="{}" stroke-width="1.2"{} points=")", color,
            s.dashed ? R"( stroke-dasharray="6 4")" : "");
        for (std::size_t i = 0; i < s.x.size(); i += stride)
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                out.put("{:.2f},{:.2f} ", sx(s.x[i]), sy(s.y[i]));
        out.put("\"/>\n");
        const double ly = top + 16 + 16 * static_cast<double>(k);
        out.put(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"{}/>)" "\n", left + pw - 150, ly - 4,
            left + pw - 120, ly - 4, color, s.dashed ? R"( stroke-dasharray="6 4")" : "");
        out.put(R"(<text x="{}" y="{}">{}</text>)" "\n", left + pw - 114, ly, escape(s.label));
    }
    out.put("</svg>\n");
    return fmt::to_string(buf);
}

void write_svg(const fs::path& path, const Plot& plot) { write_text(path, render_svg(plot)); }

std::string sha256_file(const fs::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw Error("sha256 init failed");
    std::array<char, 1 << 16> buf;
    while (f) {
        f.read(buf.data(), buf.size());
        if (f.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(f.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md;
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    std::string hex;
    for (unsigned i = 0; i < len; ++i)
        hex += fmt::format("{:02x}", md[i]);
    return hex;
}

std::string tool_version() { return LATCHAOS_VERSION; }

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& config)
{
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.json")
            files.push_back(fs::relative(e.path(), dir));
    std::sort(files.begin(), files.end());

    nlohmann::ordered_json m;
    m["tool"] = "latchaos";
    m["version"] = tool_version();
    m["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [section, keys] : resolve(config))
        for (const auto& [k, v] : keys)
            cfg[section][k] = v;
    m["config"] = cfg;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& rel : files)
        list.push_back({{"path", rel.generic_string()},
                        {"bytes", fs::file_size(dir / rel)},
                        {"sha256", sha256_file(dir / rel)}});
    m["files"] = list;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

} // namespace latchaos::cli
