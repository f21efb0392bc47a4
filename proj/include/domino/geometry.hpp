#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "domino/orbit.hpp"
#include "domino/substitution.hpp"

namespace domino {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

class DefectiveExpansion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TilePolygon {
  Rule rule;
  Point anchor;  // top-left corner
  double top_width = 0.0;
  double height = 0.0;
  std::vector<double> bottom_cuts;  // cumulative offsets of the bottom vertices

  // Top-left, top-right, bottom vertices right to left, bottom-left.
  std::vector<Point> vertices() const;
};

TilePolygon tile_polygon(const Rule& rule, Point anchor, const ExpansionData& exp,
                         double tol = 1e-9);

struct TilingLayout {
  ExpansionData expansion;
  std::unordered_map<std::uint64_t, Point> positions;

  const Point& at(int row, long pos) const;
  std::size_t size() const { return positions.size(); }
};

TilingLayout layout_tiling(const OrbitPatch& patch, const ExpansionData& exp);

// One tile per patch vertex; the last row uses the first rule of each letter.
std::vector<TilePolygon> layout_tiles(const OrbitPatch& patch, const TilingLayout& layout,
                                      double tol = 1e-9);

struct BlockSpec {
  int h = 1;
  int t = 1;
  Point anchor;

  double width() const;
  double height() const;
};

// Tiles of the doubling substitution filling an (h,t)-block, row by row.
std::vector<TilePolygon> block_layout(const BlockSpec& spec);

struct SvgStyle {
  std::string stroke = "#000000";
  std::string fill = "none";
  double scale = 100.0;
  double stroke_width = 1.0;
  bool labels = false;
  int precision = 4;
};

std::string render_svg(const std::vector<TilePolygon>& tiles, const SvgStyle& style = {},
                       const std::vector<std::string>& letter_names = {});

}  // namespace domino
