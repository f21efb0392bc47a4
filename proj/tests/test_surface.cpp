#include <doctest.h>

#include <random>
#include <set>

#include "domino/surface.hpp"
#include "oracles.hpp"

using namespace domino::surface;

TEST_SUITE("surface_group") {

TEST_CASE("words") {
  const GroupWord r(kRelator.begin(), kRelator.end());
  CHECK(format_group_word(r) == "abABcdCD");
  CHECK(parse_group_word("a b 1 A") == GroupWord{0, 2, 1});
  CHECK_THROWS(parse_group_word("ax"));
  CHECK(invert(parse_group_word("abC")) == parse_group_word("cBA"));
  CHECK(free_reduce(parse_group_word("abBAc")) == parse_group_word("c"));
}

TEST_CASE("Dehn reduction") {
  CHECK(dehn_reduce(parse_group_word("abABcdCD")).empty());
  CHECK(dehn_reduce(parse_group_word("aA")).empty());
  CHECK(format_group_word(dehn_reduce(parse_group_word("abABc"))) == "dcD");
  CHECK(is_identity(parse_group_word("cdCDabAB")));
  CHECK_FALSE(is_identity(parse_group_word("abAB")));
  CHECK_FALSE(is_identity(parse_group_word("a")));
  // Conjugates of relator rotations.
  CHECK(is_identity(parse_group_word("ca" "BcdCDabA" "AC")));
}

TEST_CASE("Dehn reduction agrees with the Fuchsian model on short words") {
  // Matrix entries grow exponentially with word length; keep words short enough
  // for the identity test to be meaningful.
  oracle::SurfaceGroup G;
  std::mt19937_64 rng(4);
  int trivial = 0;
  for (int k = 0; k < 20000; ++k) {
    GroupWord w;
    const std::size_t n = rng() % 9;
    for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<Gen>(rng() % 8));
    const GroupWord red = dehn_reduce(w);
    const bool id = oracle::SurfaceGroup::is_identity(G.word(w));
    trivial += id;
    CHECK(id == red.empty());
    CHECK(red.size() <= free_reduce(w).size());
  }
  CHECK(trivial > 0);
}

TEST_CASE("conjugates of relator rotations reduce to the empty word") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 3000; ++k) {
    GroupWord w;
    for (std::size_t i = rng() % 12; i > 0; --i) w.push_back(static_cast<Gen>(rng() % 8));
    GroupWord r(kRelator.begin(), kRelator.end());
    std::rotate(r.begin(), r.begin() + static_cast<long>(rng() % 8), r.end());
    if (rng() % 2) r = invert(r);
    const GroupWord wi = invert(w);
    GroupWord x = w;
    x.insert(x.end(), r.begin(), r.end());
    x.insert(x.end(), wi.begin(), wi.end());
    CHECK(dehn_reduce(x).empty());
    // Nontrivial control: drop one relator letter.
    GroupWord y = w;
    y.insert(y.end(), r.begin() + 1, r.end());
    y.insert(y.end(), wi.begin(), wi.end());
    CHECK_FALSE(dehn_reduce(y).empty());
  }
}

TEST_CASE("rotation cycle") {
  // a -> B -> A -> b -> c -> D -> C -> d -> a
  const std::string order = "aBAbcDCd";
  for (std::size_t i = 0; i < order.size(); ++i)
    CHECK(gen_char(rotation(parse_group_word(std::string(1, order[i]))[0])) == order[(i + 1) % 8]);
  for (Gen g = 0; g < kGenerators; ++g) {
    CHECK(rotation(g, 8) == g);
    CHECK(rotation(inverse(g)) == successor(g));
  }
}

TEST_CASE("ring sizes") {
  const Addressing addr;
  CHECK(addr.ring_size(0) == 1);
  CHECK(addr.ring_size(1) == 48);
  CHECK(addr.ring_size(2) == 1632);
  CHECK(addr.ring_size(3) == 55440);
  // L_{k+1}(a) = 5 L_k(a) + 24 L_k(b) etc. give ring(R+1) ~ (17 + 12 sqrt 2) ring(R).
  const double ratio = static_cast<double>(addr.ring_size(20)) / static_cast<double>(addr.ring_size(19));
  CHECK(ratio == doctest::Approx(17.0 + 12.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(pos_to_string(addr.ring_size(24)).size() > 30);
  CHECK(grow_ball(0).cell_count() == 1);
}

TEST_CASE("explicit ball and positional addressing agree") {
  const CayleyBallPatch ball = grow_ball(3);
  const Addressing addr(6);
  CHECK(ball.rings[1].type_word() == [] {
    std::string s;
    for (int k = 0; k < 8; ++k) s += "abbbbb";
    return s;
  }());
  for (int r = 0; r <= 3; ++r)
    for (Pos p = 0; p < static_cast<Pos>(ball.rings[r].size()); ++p) {
      const CellRef c{r, p};
      CHECK(ball.symbol(c) == addr.symbol(c));
      CHECK(ball.symbol(c).valid());
      for (Gen g = 0; g < kGenerators; ++g) {
        const auto a = ball.apply(c, g);
        if (a) CHECK(addr.apply(c, g) == a);
      }
    }
}

TEST_CASE("steps invert") {
  const Addressing addr;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 3000; ++k) {
    const int ring = 1 + static_cast<int>(rng() % 20);
    const CellRef c{ring, static_cast<Pos>(rng()) % addr.ring_size(ring)};
    for (Gen g = 0; g < kGenerators; ++g) {
      const auto n = addr.apply(c, g);
      REQUIRE(n);
      CHECK(addr.apply(*n, inverse(g)) == c);
    }
    const auto right = addr.step(c, kRight);
    CHECK(addr.step(*right, kLeft) == c);
    const auto down = addr.step(c, kDown1);
    CHECK(addr.step(*down, kUp) == c);
  }
}

TEST_CASE("radius-1 patch: black cells point up to the origin") {
  const Addressing addr(4);
  const DirectionPatch p = build_direction_patch(addr, 1, true);
  CHECK(p.cells.size() == 49);
  CHECK(p.at({0, 0}).color == Color::Orange);
  int black = 0;
  for (Pos i = 0; i < 48; ++i) {
    const DirectionSymbol& s = p.at({1, i});
    if (s.color != Color::Black) continue;
    ++black;
    CHECK(nav(p, addr, {1, i}, kUp) == CellRef{0, 0});
  }
  CHECK(black == 8);
  CHECK(scan_f1(p, addr).violations == 0);
  CHECK(scan_f2(p, addr).violations == 0);
  CHECK_THROWS_AS(p.at({2, 0}), OutsidePatch);
}

TEST_CASE("rings contract upwards") {
  const Addressing addr(6);
  const DirectionPatch p = build_direction_patch(addr, 3, true);
  for (int r = 1; r <= 3; ++r) {
    std::set<CellRef> up;
    for (Pos i = 0; i < addr.ring_size(r); ++i)
      if (auto u = nav(p, addr, {r, i}, kUp)) up.insert(*u);
    CHECK(up.size() == static_cast<std::size_t>(addr.ring_size(r - 1)));
    CHECK(up.size() < static_cast<std::size_t>(addr.ring_size(r)));
    for (const auto& c : up) CHECK(c.ring == r - 1);
  }
}

TEST_CASE("orange-free patch has no right cycles") {
  const Addressing addr(10);
  const DirectionPatch p = build_direction_patch(addr, 2, false, 4);
  for (const auto& [c, s] : p.cells) {
    CHECK(s.color != Color::Orange);
    std::optional<CellRef> cur = nav(p, addr, c, kRight);
    for (std::size_t k = 0; cur && k <= p.cells.size(); ++k) {
      CHECK(*cur != c);
      if (*cur == c) break;
      cur = nav(p, addr, *cur, kRight);
    }
  }
}

TEST_CASE("f coordinates") {
  const Addressing addr(10);
  const DirectionPatch p = build_direction_patch(addr, 2, false, 4);
  CHECK(f_coords(p, addr, 0, 0) == p.anchor);
  CHECK(f_coords(p, addr, 0, 1) == nav(p, addr, p.anchor, kRight));
  CHECK(f_coords(p, addr, 1, 0) == nav(p, addr, p.anchor, kDown1));
  CHECK(f_coords(p, addr, -1, 0) == nav(p, addr, p.anchor, kUp));
  CHECK_THROWS_AS(f_coords(p, addr, 0, 100000), OutsidePatch);
  for (const auto& [c, s] : p.cells) {
    const auto [i, j] = f_inverse(p, addr, c);
    CHECK(f_coords(p, addr, i, j) == c);
  }
  CHECK_THROWS(build_direction_patch(addr, 4, false, 4));
  CHECK_THROWS(build_direction_patch(addr, 5, true));
}

TEST_CASE("cycle balance") {
  const Addressing addr;
  const CellRef start{6, 12345};
  const auto empty = check_cycle_balance(addr, start, {});
  REQUIRE(empty);
  CHECK(empty->up == 0);
  CHECK(empty->down == 0);
  GroupWord r(kRelator.begin(), kRelator.end());
  for (int rot = 0; rot < 8; ++rot) {
    GroupWord w = r;
    std::rotate(w.begin(), w.begin() + rot, w.end());
    for (const GroupWord& x : {w, invert(w)}) {
      const auto b = check_cycle_balance(addr, start, x);
      REQUIRE(b);
      CHECK(b->up == 1);
      CHECK(b->down == 1);
    }
  }
  CHECK_THROWS_AS(check_cycle_balance(addr, start, parse_group_word("ab")), NotClosed);
}

TEST_CASE("pattern transport") {
  const Addressing addr(10);
  const DirectionPatch p = build_direction_patch(addr, 2, false, 4);
  OrbitPattern single{{{0, 0}}, {}, {2}};
  OrbitPattern pair{{{0, 0}, {0, 1}}, {{0, 1, -1}}, {0, 1}};
  const auto [lo, hi] = orbit_children(p, addr, 0, 0);
  CHECK((hi - lo == 29 || hi - lo == 35));
  OrbitPattern child{{{0, 0}, {1, lo + 2}}, {{0, 1, 2}}, {1, 1}};
  OrbitPattern far{{{0, 100000}}, {}, {0}};
  const auto tr = transport_forbidden(p, addr, {single, pair, child, far});
  CHECK(tr.skipped == 1);
  REQUIRE(tr.patterns.size() == 3);
  CHECK(tr.patterns[0].cells == std::vector<CellRef>{p.anchor});
  CHECK(tr.patterns[0].colors == std::vector<int>{2});
  CHECK(nav(p, addr, tr.patterns[1].cells[0], kRight) == tr.patterns[1].cells[1]);
  CHECK(transport_back(p, addr, tr.patterns[1]) == pair);
  CHECK(transport_back(p, addr, tr.patterns[2]) == child);
  OrbitPattern broken{{{0, 0}, {0, 2}}, {{0, 1, -1}}, {0, 0}};
  CHECK_THROWS_AS(transport_forbidden(p, addr, {broken}), std::invalid_argument);
}

}
