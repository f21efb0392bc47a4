#include <doctest.h>

#include <unordered_map>

#include "domino/lift.hpp"

using namespace domino;

namespace {

NNForbiddenSet parity_rules() {
  NNForbiddenSet fs;
  fs.alphabet = {"0", "1"};
  for (int a = 0; a < 2; ++a) {
    fs.forbidden.insert({0, a, a});
    fs.forbidden.insert({1, a, a});
  }
  fs.forbidden.insert({kNextLabel, 0, 1});
  fs.forbidden.insert({kNextLabel, 1, 0});
  return fs;
}

LiftedSymbol with_coloring(const SuperSymbol& s, auto color_of_row) {
  LiftedSymbol ls{s, {}};
  for (int r = 0; r < s.h; ++r)
    for (long c = 0; c < (s.t << r); ++c) ls.coloring.push_back(color_of_row(r));
  return ls;
}

}  // namespace

TEST_SUITE("lift") {

TEST_CASE("block graph shape") {
  const BlockGraph g = block_graph(3, 3);
  CHECK(g.vertices.size() == 21);
  std::size_t next = 0, child = 0;
  for (const auto& e : g.edges) (e.label == kNextLabel ? next : child)++;
  CHECK(next == 2 + 5 + 11);
  CHECK(child == 6 + 12);
  CHECK(g.id(2, 0) == 9);
  CHECK_THROWS(block_graph(0, 3));
}

TEST_CASE("pasting") {
  const SuperSymbol u{{0, {0, 0}}, 2, 2, {{0, 0}, {2, 1}}};
  const SuperSymbol v{{0, {0, 0}}, 2, 2, {{0, 0}, {2, 1}}};
  const SuperSymbol w{{0, {0, 0}}, 2, 3, {{0, 0}, {1, 0}}};
  const PastedGraph g = paste({{u, v, w}, {{0, 1, kNextLabel}, {0, 2, 1}}});
  // Two next seams (one per row) and one child seam per top vertex of w.
  CHECK(g.seam_count() == 2 + 3);
  // Child 1 starts at anchor (2,1): bottom column 2 label 1, then column 3 labels 0 and 1.
  const std::size_t top_w = g.vertex(2, 0, 0);
  bool found = false;
  for (std::size_t e = g.first_seam; e < g.edges.size(); ++e)
    if (g.edges[e].to == top_w) found = g.edges[e].from == g.vertex(0, 1, 2) && g.edges[e].label == 1;
  CHECK(found);
  const SuperSymbol tall{{0, {0, 0}}, 3, 2, {{0, 0}, {2, 1}}};
  CHECK_THROWS_AS(paste({{u, tall}, {{0, 1, kNextLabel}}}), PasteError);
  CHECK_THROWS_AS(paste({{u}, {{0, 3, kNextLabel}}}), PasteError);
}

TEST_CASE("conflicts in pasted colorings") {
  const NNForbiddenSet fs = parity_rules();
  const SuperSymbol u{{0, {0, 0}}, 2, 2, {{0, 0}, {2, 1}}};
  const SuperSymbol w{{0, {0, 0}}, 2, 3, {{0, 0}, {1, 0}}};
  auto parity = [](int r) { return r % 2; };
  const LiftedSymbol lu = with_coloring(u, parity);
  const LiftedSymbol lw = with_coloring(w, parity);
  // u's bottom row has parity 1, so w's top row must have parity 0.
  CHECK_FALSE(lifted_forbidden(lu, lu, lw, 1, fs));
  const LiftedSymbol lw_shift = with_coloring(w, [](int r) { return (r + 1) % 2; });
  CHECK(lifted_forbidden(lu, lu, lw_shift, 1, fs));
  CHECK(lifted_forbidden(lu, lu, lw, 5, fs));
  LiftedSymbol short_coloring = lu;
  short_coloring.coloring.pop_back();
  CHECK_THROWS(lifted_forbidden(short_coloring, lu, lw, 1, fs));
}

TEST_CASE("reduction shapes") {
  const Substitution sq = power_substitution(doubling_substitution(), 2);
  const auto shapes = power_reduction(sq, 2);
  REQUIRE(shapes.size() == 4);
  for (const auto& s : shapes) {
    CHECK(s.n == 2);
    CHECK(s.vertex_count == 2 + 2 + s.ell);
    CHECK(s.edges.size() == 1 + 2 + s.ell);
  }
  const auto plain = power_reduction(doubling_substitution(), 1);
  REQUIRE(plain.size() == 2);
  CHECK(plain[1].vertex_count == 3);
  CHECK(plain[1].edges.size() == 2);
}

TEST_CASE("a wrong coloring is detected by the reduction check") {
  const OrbitPatch patch = grow_orbit_patch(doubling_substitution(), 0, 6);
  const OrbitGraphPatch g = orbit_graph_of(patch);
  const Substitution sq = power_substitution(doubling_substitution(), 2);
  const ExpansionData e = normalize_expansion({4.0, {1.0}}, 4.0);
  std::vector<std::unordered_map<std::uint64_t, LiftedSymbol>> good(2), bad(2);
  for (int k = 0; k < 2; ++k) {
    const OrbitPatch sub = subsampled_orbit(patch, 2, k);
    const Witness y = build_witness(sub, layout_tiling(sub, e), e);
    for (const auto& c : y.cells) {
      const long ref = c.ref_row;
      good[k].emplace(OrbitGraphPatch::key(c.row, c.pos),
                      with_coloring(c.symbol, [ref](int r) { return static_cast<int>(((ref + r) % 2 + 2) % 2); }));
      bad[k].emplace(OrbitGraphPatch::key(c.row, c.pos), with_coloring(c.symbol, [](int) { return 0; }));
    }
  }
  auto z_from = [&](auto& maps) {
    return [&g, &maps](std::size_t v) -> const LiftedSymbol* {
      const OrbitVertex& ov = g.vertices[v];
      auto& m = maps[static_cast<std::size_t>(ov.row % 2)];
      auto it = m.find(OrbitGraphPatch::key(ov.row / 2, ov.pos));
      return it == m.end() ? nullptr : &it->second;
    };
  };
  const auto shapes = power_reduction(sq, 2);
  const ReductionReport ok = check_reduction(g, shapes, z_from(good), parity_rules());
  CHECK(ok.checked > 0);
  CHECK(ok.violations == 0);
  const ReductionReport ko = check_reduction(g, shapes, z_from(bad), parity_rules());
  CHECK(ko.checked == ok.checked);
  CHECK(ko.violations == ko.checked);
}

TEST_CASE("embedding scan counts supports leaving the patch") {
  const OrbitPatch patch = grow_orbit_patch(doubling_substitution(), 0, 2);
  const auto scan = embed_shapes(orbit_graph_of(patch), power_reduction(doubling_substitution(), 1));
  // Only (1,0) has both a next neighbour and children: one embedding per child index.
  CHECK(scan.embeddings.size() == 2);
  CHECK(scan.skipped > 0);
}

}
