#include "domino/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace domino {

std::vector<Point> TilePolygon::vertices() const {
  std::vector<Point> out;
  out.reserve(bottom_cuts.size() + 3);
  out.push_back(anchor);
  out.push_back({anchor.x + top_width, anchor.y});
  const double yb = anchor.y - height;
  for (auto it = bottom_cuts.rbegin(); it != bottom_cuts.rend(); ++it)
    out.push_back({anchor.x + *it, yb});
  out.push_back({anchor.x, yb});
  return out;
}

TilePolygon tile_polygon(const Rule& rule, Point anchor, const ExpansionData& exp, double tol) {
  TilePolygon tp;
  tp.rule = rule;
  tp.anchor = anchor;
  const double scale = std::exp(anchor.y);
  tp.top_width = exp.v.at(rule.lhs) * scale;
  tp.height = std::log(exp.lambda);
  double acc = 0.0;
  for (int x : rule.rhs) {
    acc += exp.v.at(x) * scale / exp.lambda;
    tp.bottom_cuts.push_back(acc);
  }
  if (tp.bottom_cuts.empty() ||
      std::abs(tp.bottom_cuts.back() - tp.top_width) > tol * tp.top_width) {
    std::ostringstream msg;
    msg << "tile for rule " << rule.lhs << " -> ";
    for (int x : rule.rhs) msg << x << ' ';
    msg << "does not close: top width " << tp.top_width << ", bottom width "
        << (tp.bottom_cuts.empty() ? 0.0 : tp.bottom_cuts.back());
    throw DefectiveExpansion(msg.str());
  }
  return tp;
}

const Point& TilingLayout::at(int row, long pos) const {
  auto it = positions.find(OrbitGraphPatch::key(row, pos));
  if (it == positions.end())
    throw std::out_of_range("no position for (" + std::to_string(row) + "," +
                            std::to_string(pos) + ")");
  return it->second;
}

TilingLayout layout_tiling(const OrbitPatch& patch, const ExpansionData& exp) {
  TilingLayout lay;
  lay.expansion = exp;
  if (patch.rows.empty()) return lay;
  const double step = std::log(exp.lambda);
  {
    // Row 0 is anchored so that position 0 sits at the origin.
    const OrbitRow& row = patch.rows[0];
    double x = 0.0;
    for (long j = 0; j < row.end(); ++j) {
      if (j >= row.offset) lay.positions[OrbitGraphPatch::key(row.index, j)] = {x, 0.0};
      x += exp.v.at(patch.letter(0, j));
    }
    x = 0.0;
    for (long j = -1; j >= row.offset; --j) {
      x -= exp.v.at(patch.letter(0, j));
      lay.positions[OrbitGraphPatch::key(row.index, j)] = {x, 0.0};
    }
  }
  for (std::size_t k = 0; k + 1 < patch.rows.size(); ++k) {
    const OrbitRow& top = patch.rows[k];
    const OrbitRow& bottom = patch.rows[k + 1];
    const double y = -static_cast<double>(bottom.index) * step;
    const double scale = std::exp(y);
    for (long j = top.offset; j < top.end(); ++j) {
      double x = lay.at(top.index, j).x;
      const auto [lo, hi] = patch.children(k, j);
      for (long c = lo; c < hi; ++c) {
        lay.positions[OrbitGraphPatch::key(bottom.index, c)] = {x, y};
        x += exp.v.at(patch.letter(k + 1, c)) * scale;
      }
    }
  }
  return lay;
}

std::vector<TilePolygon> layout_tiles(const OrbitPatch& patch, const TilingLayout& layout,
                                      double tol) {
  std::vector<TilePolygon> out;
  const auto rules = patch.sub.rules();
  for (std::size_t k = 0; k < patch.rows.size(); ++k) {
    const OrbitRow& row = patch.rows[k];
    for (long j = row.offset; j < row.end(); ++j) {
      std::size_t r;
      if (k < patch.parents.size())
        r = patch.parents[k].rule_choice[static_cast<std::size_t>(j - row.offset)];
      else
        r = patch.sub.rules_for(patch.letter(k, j)).front();
      out.push_back(tile_polygon(rules[r], layout.at(row.index, j), layout.expansion, tol));
    }
  }
  return out;
}

double BlockSpec::width() const { return 2.0 * t * std::exp(anchor.y); }
double BlockSpec::height() const { return h * std::log(2.0); }

std::vector<TilePolygon> block_layout(const BlockSpec& spec) {
  if (spec.h < 1 || spec.t < 1) throw std::invalid_argument("block needs h, t >= 1");
  const ExpansionData binary{2.0, {2.0}};
  const Rule doubling{0, {0, 0}};
  std::vector<TilePolygon> out;
  long count = spec.t;
  for (int r = 0; r < spec.h; ++r, count *= 2) {
    const double y = spec.anchor.y - r * std::log(2.0);
    const double w = 2.0 * std::exp(y);
    for (long c = 0; c < count; ++c)
      out.push_back(tile_polygon(doubling, {spec.anchor.x + c * w, y}, binary));
  }
  return out;
}

namespace {

std::string num(double x, int precision) {
  if (std::abs(x) < 0.5 * std::pow(10.0, -precision)) x = 0.0;  // no "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<TilePolygon>& tiles, const SvgStyle& style,
                       const std::vector<std::string>& letter_names) {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto& t : tiles)
    for (const Point& p : t.vertices()) {
      const double sx = p.x * style.scale, sy = -p.y * style.scale;
      if (first) {
        x0 = x1 = sx;
        y0 = y1 = sy;
        first = false;
      }
      x0 = std::min(x0, sx);
      x1 = std::max(x1, sx);
      y0 = std::min(y0, sy);
      y1 = std::max(y1, sy);
    }
  const double pad = tiles.empty() ? 0.0 : 2.0 * style.stroke_width;
  const int p = style.precision;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0 - pad, p)
     << ' ' << num(y0 - pad, p) << ' ' << num(x1 - x0 + 2 * pad, p) << ' '
     << num(y1 - y0 + 2 * pad, p) << "\" width=\"" << num(x1 - x0 + 2 * pad, p)
     << "\" height=\"" << num(y1 - y0 + 2 * pad, p) << "\">\n"
     << "<g fill=\"" << style.fill << "\" stroke=\"" << style.stroke << "\" stroke-width=\""
     << num(style.stroke_width, p) << "\">\n";
  for (const auto& t : tiles) {
    os << "<path d=\"";
    bool head = true;
    for (const Point& q : t.vertices()) {
      os << (head ? "M" : " L") << num(q.x * style.scale, p) << ',' << num(-q.y * style.scale, p);
      head = false;
    }
    os << " Z\"/>\n";
  }
  os << "</g>\n";
  if (style.labels) {
    os << "<g font-family=\"sans-serif\" text-anchor=\"middle\">\n";
    for (const auto& t : tiles) {
      const double cx = (t.anchor.x + 0.5 * t.top_width) * style.scale;
      const double cy = -(t.anchor.y - 0.5 * t.height) * style.scale;
      const double size = std::max(1.0, 0.3 * t.height * style.scale);
      const std::string name = static_cast<std::size_t>(t.rule.lhs) < letter_names.size()
                                   ? letter_names[t.rule.lhs]
                                   : std::to_string(t.rule.lhs);
      os << "<text x=\"" << num(cx, p) << "\" y=\"" << num(cy, p) << "\" font-size=\""
         << num(size, p) << "\">" << name << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace domino
