#include "qspe/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace qspe {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kColors = {"#7b3294", "#e6ab02", "#d7301f",
                                                "#1b9e77", "#386cb0", "#666666"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(bool log, double lo, double hi) {
  Axis a{log, lo, hi};
  if (log) {
    a.lo = std::floor(lo);
    a.hi = std::ceil(hi);
  }
  if (a.hi <= a.lo) {
    a.lo -= 0.5;
    a.hi += 0.5;
  }
  return a;
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  if (a.log) {
    const double span = a.hi - a.lo;
    const double step = std::max(1.0, std::ceil(span / 10.0));
    for (double v = a.lo; v <= a.hi + 1e-9; v += step) t.push_back(v);
    return t;
  }
  const double raw = (a.hi - a.lo) / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step) {
    t.push_back(v);
  }
  return t;
}

std::string tick_label(const Axis& a, double v) {
  std::ostringstream os;
  if (a.log) {
    os << "1e" << static_cast<long long>(std::llround(v));
  } else {
    os << v;
  }
  return os.str();
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec, const std::vector<ChartSeries>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  std::vector<std::vector<std::pair<double, double>>> kept(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
      const double tx = spec.log_x ? std::log10(x) : x;
      const double ty = spec.log_y ? std::log10(y) : y;
      kept[s].emplace_back(tx, ty);
      xlo = std::min(xlo, tx);
      xhi = std::max(xhi, tx);
      ylo = std::min(ylo, ty);
      yhi = std::max(yhi, ty);
    }
  }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  const Axis ax = make_axis(spec.log_x, xlo, xhi);
  const Axis ay = make_axis(spec.log_y, ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double t) { return kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << escape(spec.title) << "</text>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
  for (double t : ticks(ax)) {
    const double x = px(t);
    os << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\""
       << kTop + ph << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 16
       << "\" text-anchor=\"middle\">" << tick_label(ax, t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = py(t);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw
       << "\" y2=\"" << y << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
       << tick_label(ay, t) << "</text>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16
     << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(spec.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">" << escape(spec.y_label)
     << "</text>\n";
  os << "</g>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < kept[s].size(); ++i) {
      if (i) os << ' ';
      os << px(kept[s][i].first) << ',' << py(kept[s][i].second);
    }
    os << "\"/>\n";
    for (const auto& [tx, ty] : kept[s]) {
      os << "<circle cx=\"" << px(tx) << "\" cy=\"" << py(ty) << "\" r=\"3\" fill=\"" << color
         << "\"/>\n";
    }
    const double ly = kTop + 16 + 20 * static_cast<double>(s);
    const double lx = kLeft + pw + 16;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[s].name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace qspe
