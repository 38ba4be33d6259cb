#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace codeprov {

struct Series {
  std::string name;
  std::vector<double> values;  // one per category / x position; NaN leaves a gap
};

struct ChartSpec {
  std::string title;
  std::string y_label;
  std::vector<std::string> categories;
  std::vector<Series> series;
  /// Values are fractions rendered as percentages on the axis.
  bool percent = false;
};

/// Grouped vertical bars, one group per category.
std::string bar_chart_svg(const ChartSpec& spec);

/// One polyline per series over the categories as x positions.
std::string line_chart_svg(const ChartSpec& spec);

std::string xml_escape(std::string_view s);

}  // namespace codeprov
