#pragma once

#include <string>
#include <vector>

namespace qdisp::io {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Row-major values, row 0 at the bottom (y0).
struct HeatMap {
  std::string title;
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
};

std::string render_line_plot(const LinePlot& plot);
std::string render_heat_map(const HeatMap& map);

void save_text(const std::string& path, const std::string& text);

}  // namespace qdisp::io
