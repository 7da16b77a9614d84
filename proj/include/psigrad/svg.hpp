#pragma once

#include <string>
#include <vector>

namespace psigrad {

/// One polyline of an SVG chart.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgOptions {
  int width = 720;
  int height = 480;
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  bool log_y = false;  // log10 of positive values; nonpositive points dropped
};

/// Self-contained SVG line chart (axes, ticks, legend, one polyline per
/// series); a pure view of the data, no external dependencies.
std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& options);

void write_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& options,
                      const std::string& path);

/// Two charts side by side in one SVG document.
std::string render_dual_chart(const std::vector<SvgSeries>& left, const SvgOptions& left_opts,
                              const std::vector<SvgSeries>& right,
                              const SvgOptions& right_opts);

void write_dual_chart(const std::vector<SvgSeries>& left, const SvgOptions& left_opts,
                      const std::vector<SvgSeries>& right, const SvgOptions& right_opts,
                      const std::string& path);

}  // namespace psigrad
