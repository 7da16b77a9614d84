#include "psigrad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace psigrad {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void absorb(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  void pad() {
    if (!valid()) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string chart_body(const std::vector<SvgSeries>& series, const SvgOptions& o, double x_off) {
  const double ml = 62, mr = 18, mt = 34, mb = 46;  // margins
  const double pw = o.width - ml - mr, ph = o.height - mt - mb;

  auto ymap = [&](double y) { return o.log_y ? std::log10(y) : y; };
  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (o.log_y && !(s.y[i] > 0.0)) continue;
      xr.absorb(s.x[i]);
      yr.absorb(ymap(s.y[i]));
    }
  }
  xr.pad();
  yr.pad();

  auto px = [&](double x) { return x_off + ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return mt + ph - (ymap(y) - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string svg;
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!o.title.empty()) {
    svg += "<text x=\"" + num(x_off + ml + pw / 2) + "\" y=\"18\" text-anchor=\"middle\">" +
           o.title + "</text>\n";
  }
  // frame
  svg += "<rect x=\"" + num(x_off + ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  // ticks
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / nticks;
    const double gx = px(fx);
    svg += "<line x1=\"" + num(gx) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(gx) +
           "\" y2=\"" + num(mt + ph + 4) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(gx) + "\" y=\"" + num(mt + ph + 18) +
           "\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / nticks;
    const double gy = mt + ph - (fy - yr.lo) / (yr.hi - yr.lo) * ph;
    svg += "<line x1=\"" + num(x_off + ml - 4) + "\" y1=\"" + num(gy) + "\" x2=\"" +
           num(x_off + ml) + "\" y2=\"" + num(gy) + "\" stroke=\"#333\"/>\n";
    const std::string label = o.log_y ? ("1e" + num(fy)) : num(fy);
    svg += "<text x=\"" + num(x_off + ml - 6) + "\" y=\"" + num(gy + 4) +
           "\" text-anchor=\"end\">" + label + "</text>\n";
  }
  svg += "<text x=\"" + num(x_off + ml + pw / 2) + "\" y=\"" + num(o.height - 8.0) +
         "\" text-anchor=\"middle\">" + o.x_label + "</text>\n";
  if (!o.y_label.empty()) {
    svg += "<text x=\"" + num(x_off + 14) + "\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 " + num(x_off + 14) + " " +
           num(mt + ph / 2) + ")\">" + o.y_label + "</text>\n";
  }
  // polylines
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (o.log_y && !(series[s].y[i] > 0.0)) continue;
      pts += num(px(series[s].x[i])) + "," + num(py(series[s].y[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.4\" points=\"" + pts + "\"/>\n";
    // legend entry
    const double ly = mt + 14.0 + 16.0 * s;
    svg += "<line x1=\"" + num(x_off + ml + 8) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(x_off + ml + 28) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(x_off + ml + 32) + "\" y=\"" + num(ly) + "\">" +
           series[s].label + "</text>\n";
  }
  svg += "</g>\n";
  return svg;
}

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& o) {
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(o.width) + "\" height=\"" + std::to_string(o.height) +
                    "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += chart_body(series, o, 0.0);
  svg += "</svg>\n";
  return svg;
}

void write_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& options,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_line_chart: cannot open " + path);
  out << render_line_chart(series, options);
}

std::string render_dual_chart(const std::vector<SvgSeries>& left, const SvgOptions& left_opts,
                              const std::vector<SvgSeries>& right,
                              const SvgOptions& right_opts) {
  const int width = left_opts.width + right_opts.width;
  const int height = std::max(left_opts.height, right_opts.height);
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" + std::to_string(height) +
                    "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += chart_body(left, left_opts, 0.0);
  svg += chart_body(right, right_opts, left_opts.width);
  svg += "</svg>\n";
  return svg;
}

void write_dual_chart(const std::vector<SvgSeries>& left, const SvgOptions& left_opts,
                      const std::vector<SvgSeries>& right, const SvgOptions& right_opts,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_dual_chart: cannot open " + path);
  out << render_dual_chart(left, left_opts, right, right_opts);
}

}  // namespace psigrad
