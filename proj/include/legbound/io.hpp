#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace legbound {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits: enough to round-trip any double.
inline std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

inline std::string format_number(std::optional<double> value) {
  return value ? format_number(*value) : std::string();
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_error("failed writing '" + path + "'");
}

enum class SeriesStyle { line, dash, dots };

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  SeriesStyle style = SeriesStyle::line;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

namespace detail {

inline std::string svg_escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed(double v, int digits = 2) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
  return buffer;
}

inline std::string tick_label(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.3g", v);
  return buffer;
}

}  // namespace detail

/// Static SVG line/scatter chart, optional log10 y axis.
inline void write_svg(std::ostream& out, const Plot& plot) {
  constexpr double width = 640.0;
  constexpr double height = 420.0;
  constexpr double left = 70.0;
  constexpr double right = 20.0;
  constexpr double top = 40.0;
  constexpr double bottom = 50.0;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  auto ty = [&](double y) { return plot.log_y ? std::log10(y) : y; };
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (plot.log_y && !(s.y[i] > 0.0)) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, ty(s.y[i]));
      y_max = std::max(y_max, ty(s.y[i]));
    }
  }
  if (!(x_min < x_max)) { x_min -= 1.0; x_max += 1.0; }
  if (!(y_min < y_max)) { y_min -= 1.0; y_max += 1.0; }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (width - left - right); };
  auto py = [&](double y) {
    return height - bottom - (ty(y) - y_min) / (y_max - y_min) * (height - top - bottom);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\">"
      << detail::svg_escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
      << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    const double label_y = plot.log_y ? std::pow(10.0, yv) : yv;
    out << "<text x=\"" << detail::fixed(px(xv)) << "\" y=\"" << height - bottom + 18
        << "\" text-anchor=\"middle\">" << detail::tick_label(xv) << "</text>\n";
    const double y_pixel =
        height - bottom - (yv - y_min) / (y_max - y_min) * (height - top - bottom);
    out << "<text x=\"" << left - 6 << "\" y=\"" << detail::fixed(y_pixel + 4)
        << "\" text-anchor=\"end\">" << detail::tick_label(label_y) << "</text>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
      << detail::svg_escape(plot.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << height / 2 << ")\">" << detail::svg_escape(plot.y_label) << "</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* color = colors[s % 5];
    if (series.style == SeriesStyle::dots) {
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (plot.log_y && !(series.y[i] > 0.0)) continue;
        out << "<circle cx=\"" << detail::fixed(px(series.x[i])) << "\" cy=\""
            << detail::fixed(py(series.y[i])) << "\" r=\"1.8\" fill=\"" << color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\"";
      if (series.style == SeriesStyle::dash) out << " stroke-dasharray=\"6 4\"";
      out << " points=\"";
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (plot.log_y && !(series.y[i] > 0.0)) continue;
        out << detail::fixed(px(series.x[i])) << ',' << detail::fixed(py(series.y[i])) << ' ';
      }
      out << "\"/>\n";
    }
    out << "<text x=\"" << width - right - 8 << "\" y=\"" << top + 16 + 16.0 * static_cast<double>(s)
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << detail::svg_escape(series.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace legbound
