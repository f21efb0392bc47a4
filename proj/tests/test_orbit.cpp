#include <doctest.h>

#include <set>

#include "domino/orbit.hpp"

using namespace domino;

TEST_SUITE("orbit_graph") {

TEST_CASE("accumulation tables") {
  const std::vector<long> u{2, 1, 3};
  const AccumulationTable t = accumulation(u, -1);
  CHECK(t.lo == -1);
  // Delta(0) = 0 whatever the window.
  CHECK(t.values == std::vector<long>{-2, 0, 1, 4});
  CHECK(t.at(0) == 0);
  CHECK(t.at(2) == 4);
  CHECK_THROWS(t.at(3));
  const std::vector<long> zero{2, 0};
  CHECK_THROWS(accumulation(zero));
}

TEST_CASE("doubling orbit rows double") {
  const OrbitPatch p = grow_orbit_patch(doubling_substitution(), 0, 4);
  REQUIRE(p.rows.size() == 5);
  for (std::size_t k = 0; k < p.rows.size(); ++k) CHECK(p.rows[k].word.size() == (1u << k));
  CHECK(validate_orbit(p).empty());
  CHECK(p.children(2, 1) == std::pair<long, long>{2, 4});
}

TEST_CASE("children partition every row") {
  const Substitution s = surface_substitution();
  const OrbitPatch p = grow_orbit_patch(s, 1, 2);
  CHECK(p.rows[1].word.size() == 35);
  for (std::size_t k = 0; k + 1 < p.rows.size(); ++k) {
    long expect = p.rows[k + 1].offset;
    for (long j = p.rows[k].offset; j < p.rows[k].end(); ++j) {
      const auto [lo, hi] = p.children(k, j);
      CHECK(lo == expect);
      // The children spell the chosen rule.
      const Rule& r = s.rules()[p.parents[k].rule_choice[static_cast<std::size_t>(j - p.rows[k].offset)]];
      CHECK(r.lhs == p.letter(k, j));
      CHECK(Word(p.rows[k + 1].word.begin() + (lo - p.rows[k + 1].offset),
                 p.rows[k + 1].word.begin() + (hi - p.rows[k + 1].offset)) == r.rhs);
      expect = hi;
    }
    CHECK(expect == p.rows[k + 1].end());
  }
}

TEST_CASE("orbit graph edges and boundary") {
  const OrbitPatch p = grow_orbit_patch(doubling_substitution(), 0, 3);
  const OrbitGraphPatch g = orbit_graph_of(p);
  CHECK(g.vertices.size() == 15);
  std::size_t next = 0, child = 0;
  for (const auto& e : g.edges) (e.label == kNextLabel ? next : child)++;
  CHECK(next == 0 + 1 + 3 + 7);
  CHECK(child == 14);
  const auto v = g.find(2, 1);
  REQUIRE(v);
  CHECK(g.vertices[*v].letter == 0);
  CHECK_FALSE(g.find(5, 0));
  // Row ends and the first and last rows are boundary.
  CHECK(g.vertices[*g.find(0, 0)].boundary);
  CHECK(g.vertices[*g.find(3, 4)].boundary);
  CHECK(g.vertices[*g.find(2, 0)].boundary);
  CHECK_FALSE(g.vertices[*g.find(2, 1)].boundary);
}

TEST_CASE("random choosers give valid orbits") {
  const Substitution nd = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"a", "ba"}, {"b", "a"}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const OrbitPatch p = grow_orbit_patch(nd, 0, 6, random_rule_chooser(seed));
    CHECK(validate_orbit(p).empty());
  }
}

TEST_CASE("subsampled orbits use power rules") {
  const Substitution nd = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"a", "ba"}, {"b", "a"}});
  const OrbitPatch p = grow_orbit_patch(nd, 0, 5, random_rule_chooser(3));
  for (int k = 0; k < 2; ++k) {
    const OrbitPatch q = subsampled_orbit(p, 2, k);
    CHECK(validate_orbit(q).empty());
    CHECK(q.rows.front().word == p.rows[static_cast<std::size_t>(k)].word);
    CHECK(q.sub == power_substitution(nd, 2));
  }
  CHECK(subsampled_orbit(p, 2, 0).rows.size() == 3);
  CHECK(subsampled_orbit(p, 2, 1).rows.size() == 3);
  CHECK_THROWS(subsampled_orbit(p, 0, 0));
}

}
