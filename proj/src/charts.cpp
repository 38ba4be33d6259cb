#include "codeprov/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace codeprov {

namespace {

constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 110, kPlotH = 300;
constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double nice_ceiling(double m, bool percent) {
  if (m <= 0.0) return percent ? 0.1 : 1.0;
  if (percent) return std::min(1.0, std::ceil(m * 10.0) / 10.0);
  const double mag = std::pow(10.0, std::floor(std::log10(m)));
  for (double step : {1.0, 2.0, 5.0, 10.0})
    if (step * mag >= m) return step * mag;
  return 10.0 * mag;
}

/// Axis range covering zero and every finite value.
std::pair<double, double> nice_range(const ChartSpec& spec) {
  double lo = 0.0, hi = 0.0;
  for (const auto& s : spec.series)
    for (double v : s.values)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  const double top = hi > 0.0 || lo == 0.0 ? nice_ceiling(hi, spec.percent) : 0.0;
  const double bottom = lo < 0.0 ? -nice_ceiling(-lo, spec.percent) : 0.0;
  return {bottom, top};
}

std::string tick_label(double v, bool percent) {
  char buf[32];
  if (percent) std::snprintf(buf, sizeof buf, "%.0f%%", v * 100.0);
  else if (std::abs(v) >= 100 || v == std::floor(v)) std::snprintf(buf, sizeof buf, "%.0f", v);
  else std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double width;
  double ymin;
  double ymax;
  std::string svg;

  double y(double v) const {
    v = std::clamp(v, ymin, ymax);
    return kTop + kPlotH - ((v - ymin) / (ymax - ymin)) * kPlotH;
  }
};

Frame open_frame(const ChartSpec& spec, double plot_w) {
  const auto [lo, hi] = nice_range(spec);
  Frame f{kLeft + plot_w + kRight, lo, hi, {}};
  const double legend_h = spec.series.size() > 1 ? 20.0 * static_cast<double>(spec.series.size()) : 0.0;
  const double height = kTop + kPlotH + kBottom + legend_h;
  f.svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" + num(height) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  f.svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f.svg += "<text x=\"" + num(f.width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           xml_escape(spec.title) + "</text>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = f.ymin + (f.ymax - f.ymin) * i / 5.0;
    const double yy = f.y(v);
    f.svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(yy) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" +
             num(yy) + "\" stroke=\"#ddd\"/>\n";
    f.svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(yy + 4) + "\" text-anchor=\"end\">" +
             tick_label(v, spec.percent) + "</text>\n";
  }
  f.svg += "<text transform=\"translate(16," + num(kTop + kPlotH / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(spec.y_label) + "</text>\n";
  f.svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(f.y(0.0)) + "\" x2=\"" + num(kLeft + plot_w) +
           "\" y2=\"" + num(f.y(0.0)) + "\" stroke=\"black\"/>\n";
  return f;
}

void category_labels(Frame& f, const ChartSpec& spec, double slot, double first_center) {
  for (std::size_t i = 0; i < spec.categories.size(); ++i) {
    const double x = first_center + slot * static_cast<double>(i);
    f.svg += "<text transform=\"translate(" + num(x) + "," + num(kTop + kPlotH + 12) +
             ") rotate(45)\" text-anchor=\"start\">" + xml_escape(spec.categories[i]) + "</text>\n";
  }
}

std::string close_frame(Frame& f, const ChartSpec& spec) {
  if (spec.series.size() > 1) {
    double y = kTop + kPlotH + kBottom;
    for (std::size_t s = 0; s < spec.series.size(); ++s, y += 20) {
      f.svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(y - 10) + "\" width=\"12\" height=\"12\" fill=\"" +
               kPalette[s % 10] + "\"/>\n";
      f.svg += "<text x=\"" + num(kLeft + 18) + "\" y=\"" + num(y) + "\">" + xml_escape(spec.series[s].name) +
               "</text>\n";
    }
  }
  f.svg += "</svg>\n";
  return std::move(f.svg);
}

}  // namespace

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string bar_chart_svg(const ChartSpec& spec) {
  const double groups = static_cast<double>(std::max<std::size_t>(1, spec.categories.size()));
  const double per_series = static_cast<double>(std::max<std::size_t>(1, spec.series.size()));
  const double bar_w = std::max(4.0, 24.0 / per_series);
  const double slot = bar_w * per_series + 12.0;
  Frame f = open_frame(spec, std::max(200.0, slot * groups));
  const double plot_w = f.width - kLeft - kRight;
  const double offset = kLeft + (plot_w - slot * groups) / 2.0;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    for (std::size_t i = 0; i < spec.categories.size() && i < spec.series[s].values.size(); ++i) {
      const double v = spec.series[s].values[i];
      if (!std::isfinite(v)) continue;
      const double x = offset + slot * static_cast<double>(i) + 6.0 + bar_w * static_cast<double>(s);
      const double top = std::min(f.y(v), f.y(0.0));
      const double height = std::abs(f.y(v) - f.y(0.0));
      f.svg += "<rect x=\"" + num(x) + "\" y=\"" + num(top) + "\" width=\"" + num(bar_w) + "\" height=\"" +
               num(height) + "\" fill=\"" + kPalette[s % 10] + "\"><title>" +
               xml_escape(spec.categories[i]) + ": " + tick_label(v, spec.percent) + "</title></rect>\n";
    }
  }
  category_labels(f, spec, slot, offset + slot / 2.0);
  return close_frame(f, spec);
}

std::string line_chart_svg(const ChartSpec& spec) {
  const double n = static_cast<double>(std::max<std::size_t>(1, spec.categories.size()));
  const double slot = 36.0;
  Frame f = open_frame(spec, std::max(200.0, slot * n));
  const double plot_w = f.width - kLeft - kRight;
  const double offset = kLeft + (plot_w - slot * n) / 2.0 + slot / 2.0;
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    std::string points;
    auto flush = [&] {
      if (!points.empty())
        f.svg += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[s % 10]) +
                 "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < spec.categories.size() && i < spec.series[s].values.size(); ++i) {
      const double v = spec.series[s].values[i];
      if (!std::isfinite(v)) {
        flush();
        continue;
      }
      const double x = offset + slot * static_cast<double>(i);
      const double y = f.y(v);
      if (!points.empty()) points += ' ';
      points += num(x) + "," + num(y);
      f.svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"2.5\" fill=\"" + kPalette[s % 10] + "\"/>\n";
    }
    flush();
  }
  category_labels(f, spec, slot, offset);
  return close_frame(f, spec);
}

}  // namespace codeprov
