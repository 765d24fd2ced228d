#pragma once

#include <map>
#include <string>
#include <vector>

namespace jcd::cli {

/// Doubles serialized with 17 significant digits (lossless round trip).
std::string g17(double v);

/// Writes the buffer as-is (binary mode, LF endings). False on I/O failure.
bool write_text_file(const std::string& path, const std::string& content);

/// key=value lines; blank lines and '#' comments ignored. Throws on
/// unreadable file.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Minimal static SVG: one polyline per named series over a shared x grid.
std::string line_plot_svg(const std::vector<double>& x,
                          const std::vector<std::string>& names,
                          const std::vector<const std::vector<double>*>& series);

/// Minimal static SVG heatmap of a row-major (x, y) grid, downsampled to at
/// most ~240x160 cells.
std::string heatmap_svg(const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& values);

}  // namespace jcd::cli
