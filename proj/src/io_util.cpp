#include "mcflab/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcflab/errors.hpp"

namespace mcf {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y) {
  const double W = 720, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      double yv = s.y[i];
      if (log_y && yv <= 0) continue;
      if (log_y) yv = std::log10(yv);
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) {
    if (log_y) y = std::log10(std::max(y, 1e-300));
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double fx = xmin + (xmax - xmin) * k / 4.0;
    double fyv = ymin + (ymax - ymin) * k / 4.0;
    double fy = log_y ? std::pow(10.0, fyv) : fyv;
    svg << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_g17(std::round(fx * 1e6) / 1e6)
        << "</text>\n";
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb - (H - mt - mb) * k / 4.0 + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_g17(std::round(fy * 1e6) / 1e6)
        << "</text>\n";
  }
  double ly = mt;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0) continue;
      svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << W - mr - 4 << "\" y=\"" << ly + 12
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << s.color << "\">" << s.label
        << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

} // namespace mcf
