#include "jcd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace jcd::cli {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) return false;
  const bool wrote =
      std::fwrite(content.data(), 1, content.size(), f) == content.size();
  const bool closed = std::fclose(f) == 0;
  return wrote && closed;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](const std::string& s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line is not key=value: " + line);
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

namespace {

constexpr int kWidth = 840;
constexpr int kHeight = 520;
constexpr int kMargin = 60;

struct Range {
  double lo = 0.0, hi = 1.0;
  double map(double v, double a, double b) const {
    if (hi == lo) return 0.5 * (a + b);
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

Range find_range(const std::vector<double>& v) {
  Range r{std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};
  for (double x : v) {
    r.lo = std::min(r.lo, x);
    r.hi = std::max(r.hi, x);
  }
  if (!(r.lo <= r.hi)) r = {0.0, 1.0};
  return r;
}

const char* kSeriesColors[] = {"#1f5fd0", "#d03b2f", "#2f8f4e", "#8458b3"};

std::string svg_header() {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                kWidth, kHeight, kWidth, kHeight);
  return std::string(buf) +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axis_box(const Range& xr, const Range& yr) {
  char buf[512];
  std::snprintf(
      buf, sizeof buf,
      "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
      "stroke=\"black\"/>\n"
      "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.6g</text>\n"
      "<text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n"
      "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.6g</text>\n"
      "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.6g</text>\n",
      kMargin, kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin, kMargin,
      kHeight - kMargin + 16, xr.lo, kWidth - kMargin, kHeight - kMargin + 16,
      xr.hi, 8, kHeight - kMargin, yr.lo, 8, kMargin + 4, yr.hi);
  return buf;
}

}  // namespace

std::string line_plot_svg(const std::vector<double>& x,
                          const std::vector<std::string>& names,
                          const std::vector<const std::vector<double>*>& series) {
  const Range xr = find_range(x);
  Range yr{std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const auto* s : series) {
    const Range r = find_range(*s);
    yr.lo = std::min(yr.lo, r.lo);
    yr.hi = std::max(yr.hi, r.hi);
  }
  if (!(yr.lo <= yr.hi)) yr = {0.0, 1.0};

  std::string out = svg_header() + axis_box(xr, yr);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::vector<double>& v = *series[k];
    std::string pts;
    char buf[64];
    for (std::size_t i = 0; i < x.size() && i < v.size(); ++i) {
      const double px = xr.map(x[i], kMargin, kWidth - kMargin);
      const double py = yr.map(v[i], kHeight - kMargin, kMargin);
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
      pts += buf;
    }
    const char* color = kSeriesColors[k % 4];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1\" points=\"" + pts + "\"/>\n";
    char label[160];
    std::snprintf(label, sizeof label,
                  "<text x=\"%d\" y=\"%zu\" font-size=\"13\" fill=\"%s\">%s</text>\n",
                  kMargin + 8, kMargin + 18 + 16 * k, color,
                  k < names.size() ? names[k].c_str() : "series");
    out += label;
  }
  return out + "</svg>\n";
}

std::string heatmap_svg(const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::vector<double>& values) {
  const std::size_t nx = x.size(), ny = y.size();
  if (nx == 0 || ny == 0 || values.size() != nx * ny)
    throw std::invalid_argument("heatmap_svg: grid shape mismatch");
  const Range vr = find_range(values);

  const std::size_t cx = std::min<std::size_t>(nx, 240);
  const std::size_t cy = std::min<std::size_t>(ny, 160);
  const double cell_w = double(kWidth - 2 * kMargin) / cx;
  const double cell_h = double(kHeight - 2 * kMargin) / cy;

  std::string out = svg_header();
  char buf[256];
  for (std::size_t i = 0; i < cx; ++i)
    for (std::size_t j = 0; j < cy; ++j) {
      const std::size_t si = i * nx / cx;
      const std::size_t sj = j * ny / cy;
      const double v = values[si * ny + sj];
      const double t = vr.hi > vr.lo ? (v - vr.lo) / (vr.hi - vr.lo) : 0.0;
      const int r = static_cast<int>(255 * t);
      const int b = static_cast<int>(255 * (1.0 - t));
      const int g = static_cast<int>(90 * (1.0 - std::abs(2.0 * t - 1.0)));
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                    "fill=\"rgb(%d,%d,%d)\"/>\n",
                    kMargin + i * cell_w,
                    kHeight - kMargin - (j + 1) * cell_h, cell_w + 0.5,
                    cell_h + 0.5, r, g, b);
      out += buf;
    }
  const Range xr = find_range(x), yr = find_range(y);
  out += axis_box(xr, yr);
  return out + "</svg>\n";
}

}  // namespace jcd::cli
