#include <doctest.h>

#include <cmath>
#include <set>
#include <random>

#include "domino/substitution.hpp"

using namespace domino;

namespace {

// Independent eigen check: lambda v(a) = sum over rhs for every rule, by direct summation.
double worst_defect(const Substitution& s, const ExpansionData& e) {
  double worst = 0.0;
  for (const Rule& r : s.rules()) {
    double sum = 0.0;
    for (int x : r.rhs) sum += e.v[x];
    worst = std::max(worst, std::abs(e.lambda * e.v[r.lhs] - sum) / (e.lambda * e.v[r.lhs]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("substitution") {

TEST_CASE("surface substitution eigen data") {
  const Substitution s = surface_substitution();
  REQUIRE(s.letter_count() == 2);
  CHECK(s.rules()[0].rhs.size() == 29);
  CHECK(s.rules()[1].rhs.size() == 35);
  const auto e = find_expansion(s);
  REQUIRE(e);
  CHECK(e->lambda == doctest::Approx(17.0 + 12.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(e->v[1] / e->v[0] == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
  CHECK(worst_defect(s, *e) < 1e-12);
  CHECK(check_expansion(s, *e));
}

TEST_CASE("doubling substitution") {
  const auto e = find_expansion(doubling_substitution());
  REQUIRE(e);
  CHECK(e->lambda == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(minimal_power(e->lambda) == 2);
  CHECK(minimal_power(4.0) == 1);
  CHECK(minimal_power(1.5) == 2);
  CHECK(minimal_power(1.2) == 4);
}

TEST_CASE("random primitive substitutions satisfy the eigen equation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<std::string> letters;
    for (int a = 0; a < n; ++a) letters.push_back(std::string(1, static_cast<char>('a' + a)));
    std::vector<Rule> rules;
    for (int a = 0; a < n; ++a) {
      Rule r{a, {}};
      // Every letter appears, so the matrix is positive and primitive.
      for (int b = 0; b < n; ++b) r.rhs.push_back(b);
      const std::size_t extra = 1 + rng() % 4;
      for (std::size_t k = 0; k < extra; ++k) r.rhs.push_back(static_cast<int>(rng() % n));
      rules.push_back(r);
    }
    const Substitution s(letters, rules);
    const auto e = find_expansion(s);
    REQUIRE(e);
    CHECK(e->lambda > 1.0);
    CHECK(worst_defect(s, *e) < 1e-9);
    for (double x : e->v) CHECK(x > 0.0);
  }
}

TEST_CASE("non-deterministic substitution needs a common eigenvector") {
  // 0 -> 00 | 000 has no common lambda.
  const Substitution bad = Substitution::from_strings({"0"}, {{"0", "00"}, {"0", "000"}});
  CHECK_FALSE(find_expansion(bad));
  // Two rules with the same counts share the eigen data.
  const Substitution ok = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"a", "ba"}, {"b", "aab"}, {"b", "aba"}});
  const auto e = find_expansion(ok);
  REQUIRE(e);
  CHECK(worst_defect(ok, *e) < 1e-9);
  CHECK_FALSE(ok.deterministic());
}

TEST_CASE("rule defects and normalization") {
  const Substitution s = doubling_substitution();
  const ExpansionData wrong{3.0, {1.0}};
  CHECK_FALSE(check_expansion(s, wrong));
  CHECK(rule_defects(s, wrong)[0] == doctest::Approx(1.0 / 3.0));
  const ExpansionData n = normalize_expansion({2.0, {1.0}}, 4.0);
  CHECK(n.v[0] == doctest::Approx(4.1));
  CHECK(n.lambda == 2.0);
  const ExpansionData same = normalize_expansion({2.0, {7.0}}, 4.0);
  CHECK(same.v[0] == 7.0);
}

TEST_CASE("powers compose rules") {
  const Substitution sq = power_substitution(doubling_substitution(), 2);
  REQUIRE(sq.rules().size() == 1);
  CHECK(sq.rules()[0].rhs.size() == 4);
  const Substitution nd = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"a", "ba"}, {"b", "a"}});
  // a -> ab|ba, each child expands independently: |{a b, b a} x choices| distinct words.
  const Substitution p2 = power_substitution(nd, 2);
  std::set<std::string> rhs_a;
  for (const Rule& r : p2.rules())
    if (r.lhs == 0) rhs_a.insert(p2.format(r.rhs));
  CHECK(rhs_a == std::set<std::string>{"aba", "baa", "aab"});
  CHECK_THROWS_AS(power_substitution(surface_substitution(), 2, 1), RuleCountCapExceeded);
}

TEST_CASE("expansion of words and choosers") {
  const Substitution s = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"b", "a"}});
  CHECK(s.format(expand_word(s, s.parse_word("a"), 5)) == "abaababaabaab");
  const Substitution nd = Substitution::from_strings({"a", "b"}, {{"a", "ab"}, {"a", "ba"}, {"b", "a"}});
  const Word w1 = expand_word(nd, nd.parse_word("a"), 6, random_rule_chooser(11));
  const Word w2 = expand_word(nd, nd.parse_word("a"), 6, random_rule_chooser(11));
  CHECK(w1 == w2);
  CHECK(w1.size() == 21);
}

TEST_CASE("incidence matrix and validation") {
  const Substitution s = surface_substitution();
  const std::vector<std::size_t> choice{0, 1};
  const auto m = incidence_matrix(s, choice);
  CHECK(m[0][0] == 5);
  CHECK(m[0][1] == 24);
  CHECK(m[1][0] == 6);
  CHECK(m[1][1] == 29);
  const Substitution holes(std::vector<std::string>{"a", "b"}, {Rule{0, {}}});
  CHECK(validate(holes).size() == 2);
  CHECK(validate(s).empty());
  CHECK_THROWS_AS(Substitution({"a", "a"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Substitution({"a"}, {Rule{0, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(s.parse_word("abz"), std::invalid_argument);
}

}
