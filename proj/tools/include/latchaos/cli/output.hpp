#pragma once

#include "latchaos/cli/config.hpp"
#include "latchaos/time_series.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace latchaos::cli {

/// Column-oriented table. The first column is the abscissa (time, or x for
/// scans); every column must have the same length.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    /// Adds the time axis of `series` followed by its values.
    static Table from_series(const std::string& value_name, const TimeSeries& series);
    std::size_t rows() const;
};

/// Header row, then one line per row; numbers rendered with 17 significant
/// digits so output is bit-reproducible.
std::string format_csv(const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Self-contained SVG line chart.
std::string render_svg(const Plot& plot);
void write_svg(const std::filesystem::path& path, const Plot& plot);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes <dir>/manifest.json recording the command, resolved configuration,
/// tool version and the checksum of every other regular file under dir.
/// Call after all other outputs are complete.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const RunConfig& config);

std::string tool_version();

} // namespace latchaos::cli
