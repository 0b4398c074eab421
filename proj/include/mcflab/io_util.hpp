#pragma once

#include <string>
#include <vector>

namespace mcf {

// Shortest representation with 17 significant digits; round-trips a double.
std::string fmt_g17(double x);

// One polyline per series; minimal static SVG for report plots.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f6fb2";
};
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y = false);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace mcf
