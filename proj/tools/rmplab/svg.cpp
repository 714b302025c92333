#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cli.hpp"

namespace rmp::cli {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
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

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range range_of(const std::vector<std::array<double, 2>>& pts, int axis) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : pts)
    if (std::isfinite(p[axis])) {
      r.lo = std::min(r.lo, p[axis]);
      r.hi = std::max(r.hi, p[axis]);
    }
  if (!(r.lo <= r.hi)) return {0.0, 1.0};
  if (r.lo == r.hi) return {r.lo - 0.5, r.hi + 0.5};
  const double pad = 0.02 * (r.hi - r.lo);
  return {r.lo - pad, r.hi + pad};
}

}  // namespace

std::string emit_svg_scatter(const std::vector<std::array<double, 2>>& points, const SvgStyle& style) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double w = style.width, h = style.height;
  const double pw = w - left - right, ph = h - top - bottom;
  const Range rx = range_of(points, 0), ry = range_of(points, 1);
  const auto map_x = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  const auto map_y = [&](double y) { return top + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
     << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << escape_xml(style.title) << "</text>\n";
  os << "<rect class=\"axes\" x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw)
     << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto label = [&](double x, double y, const std::string& anchor, const std::string& text) {
    os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" text-anchor=\"" << anchor
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(text) << "</text>\n";
  };
  label(left, top + ph + 16, "start", compact(rx.lo));
  label(left + pw, top + ph + 16, "end", compact(rx.hi));
  label(left - 6, top + ph, "end", compact(ry.lo));
  label(left - 6, top + 10, "end", compact(ry.hi));
  label(left + pw / 2, h - 12, "middle", style.x_label);
  os << "<text x=\"18\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"11\" transform=\"rotate(-90 18 " << fixed(top + ph / 2) << ")\">" << escape_xml(style.y_label)
     << "</text>\n";
  os << "<g fill=\"" << style.color << "\" fill-opacity=\"0.6\">\n";
  for (const auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
    os << "<circle cx=\"" << fixed(map_x(p[0])) << "\" cy=\"" << fixed(map_y(p[1])) << "\" r=\"" << fixed(style.radius)
       << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace rmp::cli
