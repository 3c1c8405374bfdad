#pragma once

// SVG and ASCII drawings of a signed diagram. The under-strand is broken at
// every crossing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grassknot/diagram.hpp"

namespace grassknot {

enum class RenderFormat { Svg, Ascii };

inline RenderFormat parse_render_format(std::string_view token) {
  if (token == "svg") return RenderFormat::Svg;
  if (token == "ascii") return RenderFormat::Ascii;
  throw std::invalid_argument("unsupported render format '" + std::string(token) + "'");
}

namespace detail {

struct Point {
  double x = 0;
  double y = 0;
};

struct SvgLayout {
  double unit_x = 60;   // strand spacing
  double unit_y = 24;   // level spacing
  double margin = 30;
  double strand_len = 120;
  int top_levels = 0;
  int bottom_levels = 0;

  [[nodiscard]] double strand_x(int i) const { return margin + (i - 1) * unit_x; }
  [[nodiscard]] double top_y() const { return margin + top_levels * unit_y; }
  [[nodiscard]] double bottom_y() const { return top_y() + strand_len; }
  [[nodiscard]] double level_y(Side s, int level) const {
    return s == Side::Top ? top_y() - level * unit_y : bottom_y() + level * unit_y;
  }
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

/// Closed polyline with removed intervals, emitted as SVG path data.
class CutPolyline {
 public:
  void add(Point p) {
    if (!pts_.empty()) cum_.push_back(cum_.back() + std::hypot(p.x - pts_.back().x, p.y - pts_.back().y));
    else cum_.push_back(0);
    pts_.push_back(p);
  }
  [[nodiscard]] double length() const { return cum_.empty() ? 0 : cum_.back(); }
  void cut_at(double s, double half_gap) { cuts_.push_back({s - half_gap, s + half_gap}); }

  /// Path data strings; a single closed path when nothing is cut.
  [[nodiscard]] std::vector<std::string> paths() const {
    std::vector<std::string> out;
    if (cuts_.empty()) {
      std::string d;
      for (std::size_t i = 0; i + 1 < pts_.size(); ++i) d += (i == 0 ? "M" : " L") + fmt(pts_[i].x) + "," + fmt(pts_[i].y);
      out.push_back(d + " Z");
      return out;
    }
    auto cuts = cuts_;
    std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    const double total = length();
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double from = cuts[k][1];
      double to = cuts[(k + 1) % cuts.size()][0];
      if (k + 1 == cuts.size()) to += total;
      out.push_back(span(from, to, total));
    }
    return out;
  }

 private:
  [[nodiscard]] Point at(double s, double total) const {
    s = std::fmod(std::fmod(s, total) + total, total);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cum_.begin())) - 1;
    if (i + 1 >= pts_.size()) i = pts_.size() - 2;
    const double seg = cum_[i + 1] - cum_[i];
    const double t = seg > 0 ? (s - cum_[i]) / seg : 0;
    return {pts_[i].x + t * (pts_[i + 1].x - pts_[i].x), pts_[i].y + t * (pts_[i + 1].y - pts_[i].y)};
  }

  [[nodiscard]] std::string span(double from, double to, double total) const {
    std::string d = "M" + fmt(at(from, total).x) + "," + fmt(at(from, total).y);
    for (int lap = 0; lap < 2; ++lap) {
      for (std::size_t i = 1; i + 1 < pts_.size(); ++i) {
        const double s = cum_[i] + lap * total;
        if (s > from && s < to) d += " L" + fmt(pts_[i].x) + "," + fmt(pts_[i].y);
      }
    }
    const Point end = at(to, total);
    d += " L" + fmt(end.x) + "," + fmt(end.y);
    return d;
  }

  std::vector<Point> pts_;
  std::vector<double> cum_;
  std::vector<std::array<double, 2>> cuts_;
};

inline int max_level(const LinkDiagram& d, Side s) {
  int top = 0;
  for (const auto& c : d.matching(s).chords()) top = std::max(top, d.level_of(s, c));
  return top;
}

}  // namespace detail

inline std::string render_svg(const SignedDiagram& sd) {
  const LinkDiagram& d = sd.diagram();
  const int ends = d.config().top.endpoint_count();
  detail::SvgLayout lay;
  lay.top_levels = detail::max_level(d, Side::Top);
  lay.bottom_levels = detail::max_level(d, Side::Bottom);
  const double width = 2 * lay.margin + std::max(0, ends - 1) * lay.unit_x;
  const double height = lay.bottom_y() + lay.bottom_levels * lay.unit_y + lay.margin;
  const double half_gap = 7;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::fmt(width) << "\" height=\""
      << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width) << ' ' << detail::fmt(height) << "\">\n"
      << "<g fill=\"none\" stroke=\"black\" stroke-width=\"3\" stroke-linejoin=\"round\">\n";

  // Chord path as points from `from` to `to`, plus under-crossing positions
  // measured along the path.
  auto chord_piece = [&](Side side, int from, int to, detail::CutPolyline& poly) {
    const Chord chord{std::min(from, to), std::max(from, to)};
    const int level = d.level_of(side, chord);
    const double y0 = side == Side::Top ? lay.top_y() : lay.bottom_y();
    const double yl = lay.level_y(side, level);
    const double start = poly.length();
    const double leg = std::abs(yl - y0);
    const double run = (chord.hi - chord.lo) * lay.unit_x;
    const double total = 2 * leg + run;
    for (int id : d.crossings_on(side, chord)) {
      const auto& c = d.crossings()[id];
      const bool on_a = c.chord_a == chord;
      const bool over = on_a == sd.signs()[id];
      if (over) continue;
      // Pixel distance from chord.lo along the bracket.
      const int x = c.x.convert_to<int>();
      double pos = 0;
      const double hy = c.level * lay.unit_y;
      if (x == chord.lo && c.level < level) pos = hy;
      else if (x == chord.hi && c.level < level) pos = leg + run + (leg - hy);
      else pos = leg + (x - chord.lo) * lay.unit_x;
      poly.cut_at(start + (from < to ? pos : total - pos), half_gap);
    }
    poly.add({lay.strand_x(from), yl});
    poly.add({lay.strand_x(to), yl});
    poly.add({lay.strand_x(to), y0});
  };

  for (std::size_t comp = 0; comp < d.components().size(); ++comp) {
    detail::CutPolyline poly;
    const int start = d.components()[comp].front();
    int cur = start;
    poly.add({lay.strand_x(cur), lay.top_y()});
    do {
      poly.add({lay.strand_x(cur), lay.bottom_y()});
      const int low = d.config().bottom.partner(cur);
      chord_piece(Side::Bottom, cur, low, poly);
      poly.add({lay.strand_x(low), lay.top_y()});
      const int high = d.config().top.partner(low);
      chord_piece(Side::Top, low, high, poly);
      cur = high;
    } while (cur != start);
    const auto paths = poly.paths();
    const bool closed = paths.size() == 1 && paths.front().back() == 'Z';
    for (const auto& p : paths)
      out << "<path class=\"" << (closed ? "loop" : "strand") << "\" data-component=\"" << comp << "\" d=\"" << p
          << "\"/>\n";
  }
  out << "</g>\n<g font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\n";
  const double mid = (lay.top_y() + lay.bottom_y()) / 2;
  for (int i = 1; i <= ends; ++i)
    out << "<text x=\"" << detail::fmt(lay.strand_x(i) + 10) << "\" y=\"" << detail::fmt(mid) << "\">" << i
        << "</text>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

/// Coarse character-grid drawing. At a crossing the over-strand's glyph is
/// kept; when the vertical strand is over, the horizontal run is blanked on
/// both sides of it.
inline std::string render_ascii(const SignedDiagram& sd) {
  const LinkDiagram& d = sd.diagram();
  const int ends = d.config().top.endpoint_count();
  const int top_levels = detail::max_level(d, Side::Top);
  const int bottom_levels = detail::max_level(d, Side::Bottom);
  const int strand_rows = 3;
  const int rows = top_levels + strand_rows + bottom_levels;
  const int cols = std::max(1, 4 * (ends - 1) + 3);
  std::vector<std::string> grid(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(cols), ' '));
  auto col = [](int endpoint) { return 4 * (endpoint - 1) + 1; };
  auto row = [&](Side s, int level) { return s == Side::Top ? top_levels - level : top_levels + strand_rows - 1 + level; };

  for (int i = 1; i <= ends; ++i)
    for (int r = top_levels; r < top_levels + strand_rows; ++r) grid[r][col(i)] = '|';
  for (int i = 1; i <= ends; ++i) {
    const std::string num = std::to_string(i);
    for (std::size_t k = 0; k < num.size() && col(i) + 1 + static_cast<int>(k) < cols; ++k)
      grid[top_levels + 1][col(i) + 1 + k] = num[k];
  }
  for (Side side : {Side::Top, Side::Bottom}) {
    for (const auto& c : d.matching(side).chords()) {
      const int r = row(side, d.level_of(side, c));
      for (int x = col(c.lo); x <= col(c.hi); ++x) grid[r][x] = '-';
      grid[r][col(c.lo)] = '+';
      grid[r][col(c.hi)] = '+';
      const int base = side == Side::Top ? top_levels : top_levels + strand_rows - 1;
      const int step = side == Side::Top ? -1 : 1;
      for (int rr = base + step; rr != r; rr += step) {
        grid[rr][col(c.lo)] = '|';
        grid[rr][col(c.hi)] = '|';
      }
    }
  }
  for (int id = 0; id < d.total_crossings(); ++id) {
    const auto& c = d.crossings()[id];
    const int r = row(c.side, c.level);
    const int x = col(c.x.convert_to<int>());
    // The chord whose level equals the crossing level runs horizontally here.
    const bool a_runs = d.level_of(c.side, c.chord_a) == c.level;
    const bool a_over = sd.signs()[id];
    const bool run_over = a_runs == a_over;
    if (run_over) {
      grid[r][x] = '-';
    } else {
      grid[r][x] = '|';
      grid[r][x - 1] = ' ';
      grid[r][x + 1] = ' ';
    }
  }
  std::string out;
  for (auto& line : grid) {
    line.erase(line.find_last_not_of(' ') + 1);
    out += line + '\n';
  }
  return out;
}

inline std::string render(const SignedDiagram& sd, RenderFormat format) {
  return format == RenderFormat::Svg ? render_svg(sd) : render_ascii(sd);
}

inline std::string render(const SignedDiagram& sd, std::string_view format) {
  return render(sd, parse_render_format(format));
}

}  // namespace grassknot
