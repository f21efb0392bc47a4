#include "domino/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>

namespace domino {

Substitution::Substitution(std::vector<std::string> letters, std::vector<Rule> rules)
    : letters_(std::move(letters)), rules_(std::move(rules)) {
  std::set<std::string> seen;
  for (const auto& l : letters_) {
    if (l.empty()) throw std::invalid_argument("empty letter name");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate letter name '" + l + "'");
  }
  by_letter_.assign(letters_.size(), {});
  const int n = letter_count();
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const Rule& rule = rules_[r];
    if (rule.lhs < 0 || rule.lhs >= n)
      throw std::invalid_argument("rule " + std::to_string(r) + ": lhs out of range");
    for (int x : rule.rhs)
      if (x < 0 || x >= n)
        throw std::invalid_argument("rule " + std::to_string(r) + ": rhs letter out of range");
    by_letter_[rule.lhs].push_back(r);
    max_len_ = std::max(max_len_, rule.rhs.size());
  }
}

Substitution Substitution::from_strings(
    std::vector<std::string> letters,
    const std::vector<std::pair<std::string, std::string>>& rules) {
  Substitution tmp(letters, {});
  std::vector<Rule> parsed;
  parsed.reserve(rules.size());
  for (const auto& [lhs, rhs] : rules)
    parsed.push_back(Rule{tmp.letter_id(lhs), tmp.parse_word(rhs)});
  return Substitution(std::move(letters), std::move(parsed));
}

bool Substitution::deterministic() const {
  return std::all_of(by_letter_.begin(), by_letter_.end(),
                     [](const auto& v) { return v.size() == 1; });
}

int Substitution::letter_id(std::string_view name) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown letter '" + std::string(name) + "'");
}

Word Substitution::parse_word(std::string_view text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.push_back(letter_id(std::string_view(&c, 1)));
  return w;
}

std::string Substitution::format(std::span<const int> word) const {
  std::string out;
  for (int x : word) out += letters_.at(x);
  return out;
}

std::vector<Diagnostic> validate(const Substitution& sub) {
  std::vector<Diagnostic> out;
  const auto rules = sub.rules();
  for (std::size_t r = 0; r < rules.size(); ++r)
    if (rules[r].rhs.empty())
      out.push_back({"rule " + std::to_string(r) + " (" + sub.letters()[rules[r].lhs] +
                     "): empty right-hand side"});
  for (int a = 0; a < sub.letter_count(); ++a)
    if (sub.rules_for(a).empty())
      out.push_back({"letter '" + sub.letters()[a] + "' has no rule"});
  return out;
}

std::vector<std::vector<double>> incidence_matrix(const Substitution& sub,
                                                  std::span<const std::size_t> rule_of_letter) {
  const int n = sub.letter_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b : sub.rules()[rule_of_letter[a]].rhs) m[a][b] += 1.0;
  return m;
}

namespace {

// Power iteration on (M + I); the shift keeps imprimitive matrices convergent.
std::optional<ExpansionData> perron(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0), y(n);
  double rho = 0.0;
  bool converged = false;
  for (int it = 0; it < 100000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
      y[i] = s;
    }
    const double norm = *std::max_element(y.begin(), y.end());
    if (!(norm > 0.0)) return std::nullopt;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    rho = norm;
    if (change <= 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  // Rayleigh-style estimate from the converged vector.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m[i][j] * x[j];
    num += s;
    den += x[i];
  }
  (void)rho;
  ExpansionData e;
  e.lambda = num / den;
  const double lo = *std::min_element(x.begin(), x.end());
  if (!(lo > 0.0)) return std::nullopt;
  e.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.v[i] = x[i] / lo;
  return e;
}

}  // namespace

std::optional<ExpansionData> find_expansion(const Substitution& sub, double tol,
                                            std::size_t restriction_cap) {
  const int n = sub.letter_count();
  if (n == 0) return std::nullopt;
  std::size_t combos = 1;
  for (int a = 0; a < n; ++a) {
    const std::size_t k = sub.rules_for(a).size();
    if (k == 0) return std::nullopt;
    if (combos > restriction_cap / k + 1) {
      combos = restriction_cap + 1;
      break;
    }
    combos *= k;
  }
  if (combos > restriction_cap)
    throw ExpansionSearchCapExceeded(
        "more than " + std::to_string(restriction_cap) +
        " rule restrictions; supply the expansion data explicitly");

  std::vector<std::size_t> choice(n, 0), rule_of(n);
  while (true) {
    for (int a = 0; a < n; ++a) rule_of[a] = sub.rules_for(a)[choice[a]];
    if (auto e = perron(incidence_matrix(sub, rule_of))) {
      if (e->lambda > 1.0 + tol && check_expansion(sub, *e, tol)) return e;
    }
    int a = 0;
    while (a < n && ++choice[a] == sub.rules_for(a).size()) choice[a++] = 0;
    if (a == n) break;
  }
  return std::nullopt;
}

std::vector<double> rule_defects(const Substitution& sub, const ExpansionData& cand) {
  std::vector<double> out;
  for (const Rule& r : sub.rules()) {
    double sum = 0.0;
    for (int x : r.rhs) sum += cand.v.at(x);
    const double lhs = cand.lambda * cand.v.at(r.lhs);
    out.push_back(std::abs(lhs - sum) / std::abs(lhs));
  }
  return out;
}

bool check_expansion(const Substitution& sub, const ExpansionData& cand, double tol) {
  if (cand.v.size() != static_cast<std::size_t>(sub.letter_count())) return false;
  if (!(cand.lambda > 1.0)) return false;
  for (double x : cand.v)
    if (!(x > 0.0)) return false;
  for (double d : rule_defects(sub, cand))
    if (!(d <= tol)) return false;
  return true;
}

ExpansionData normalize_expansion(const ExpansionData& cand, double floor, double delta) {
  if (!(floor > 0.0)) throw std::invalid_argument("normalization floor must be positive");
  const double lo = *std::min_element(cand.v.begin(), cand.v.end());
  if (lo > floor) return cand;
  ExpansionData out = cand;
  const double scale = (floor + delta) / lo;
  for (double& x : out.v) x *= scale;
  return out;
}

Substitution power_substitution(const Substitution& sub, int n, std::size_t rule_cap) {
  if (n < 1) throw std::invalid_argument("power must be at least 1");
  std::vector<Rule> current(sub.rules().begin(), sub.rules().end());
  for (int step = 1; step < n; ++step) {
    std::vector<Rule> next;
    std::set<Rule> seen;
    for (const Rule& r : current) {
      // Odometer over one rule per letter of the rhs.
      std::vector<std::size_t> pick(r.rhs.size(), 0);
      while (true) {
        Rule out{r.lhs, {}};
        for (std::size_t i = 0; i < r.rhs.size(); ++i) {
          const Rule& piece = sub.rules()[sub.rules_for(r.rhs[i])[pick[i]]];
          out.rhs.insert(out.rhs.end(), piece.rhs.begin(), piece.rhs.end());
        }
        if (seen.insert(out).second) {
          next.push_back(std::move(out));
          if (next.size() > rule_cap)
            throw RuleCountCapExceeded("power substitution exceeds " + std::to_string(rule_cap) +
                                       " rules");
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == sub.rules_for(r.rhs[i]).size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    current = std::move(next);
  }
  Substitution out(std::vector<std::string>(sub.letters().begin(), sub.letters().end()),
                   std::move(current));
  if (sub.expansion()) {
    ExpansionData e = *sub.expansion();
    e.lambda = std::pow(e.lambda, n);
    out.set_expansion(e);
  }
  return out;
}

RuleChooser first_rule_chooser() {
  return [](std::size_t, int) -> std::size_t { return 0; };
}

RuleChooser random_rule_chooser(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::size_t, int) -> std::size_t { return static_cast<std::size_t>((*rng)()); };
}

Word expand_word(const Substitution& sub, std::span<const int> word, int steps,
                 const RuleChooser& chooser) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  Word cur(word.begin(), word.end());
  for (int s = 0; s < steps; ++s) {
    Word next;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      const auto options = sub.rules_for(cur[j]);
      if (options.empty())
        throw std::invalid_argument("letter '" + sub.letters()[cur[j]] + "' has no rule");
      const std::size_t pick = options.size() == 1 ? 0 : chooser(j, cur[j]) % options.size();
      const Word& rhs = sub.rules()[options[pick]].rhs;
      next.insert(next.end(), rhs.begin(), rhs.end());
    }
    cur = std::move(next);
  }
  return cur;
}

int minimal_power(double lambda, double threshold) {
  if (!(lambda > 1.0)) throw std::invalid_argument("expansion factor must exceed 1");
  int n = 1;
  double p = lambda;
  while (!(p > threshold)) {
    p *= lambda;
    ++n;
  }
  return n;
}

Substitution surface_substitution() {
  std::string ab5 = "abbbbb";
  std::string sa, sb;
  for (int i = 0; i < 4; ++i) sa += ab5;
  sa += "abbbb";
  for (int i = 0; i < 5; ++i) sb += ab5;
  sb += "abbbb";
  return Substitution::from_strings({"a", "b"}, {{"a", sa}, {"b", sb}});
}

Substitution doubling_substitution() {
  return Substitution::from_strings({"0"}, {{"0", "00"}});
}

}  // namespace domino
