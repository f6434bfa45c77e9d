// Static SVG line charts with optional log10 axes.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qspe {

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Self-contained SVG document: axes, ticks, legend and one polyline per
/// series. Non-positive values are dropped on a log axis.
std::string render_line_chart(const ChartSpec& spec, const std::vector<ChartSeries>& series);

}  // namespace qspe
