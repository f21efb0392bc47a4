#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace domino {

using Word = std::vector<int>;

struct Rule {
  int lhs = 0;
  Word rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

// Weights with lambda * v(lhs) = sum of v over rhs for every rule.
struct ExpansionData {
  double lambda = 0.0;
  std::vector<double> v;
};

struct Diagnostic {
  std::string message;
};

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::vector<std::string> letters, std::vector<Rule> rules);

  // Parses rules written as {"0", "00"} with single-character letter names.
  static Substitution from_strings(std::vector<std::string> letters,
                                   const std::vector<std::pair<std::string, std::string>>& rules);

  std::span<const std::string> letters() const { return letters_; }
  std::span<const Rule> rules() const { return rules_; }
  int letter_count() const { return static_cast<int>(letters_.size()); }
  std::size_t max_rule_length() const { return max_len_; }
  // Indices into rules() whose lhs is the given letter, in input order.
  std::span<const std::size_t> rules_for(int letter) const { return by_letter_.at(letter); }
  bool deterministic() const;

  int letter_id(std::string_view name) const;
  Word parse_word(std::string_view text) const;
  std::string format(std::span<const int> word) const;

  const std::optional<ExpansionData>& expansion() const { return expansion_; }
  void set_expansion(std::optional<ExpansionData> e) { expansion_ = std::move(e); }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.letters_ == b.letters_ && a.rules_ == b.rules_;
  }

 private:
  std::vector<std::string> letters_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_letter_;
  std::size_t max_len_ = 0;
  std::optional<ExpansionData> expansion_;
};

class ExpansionSearchCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuleCountCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Diagnostic> validate(const Substitution& sub);

// Perron data of the incidence matrix; for several rules per letter every
// one-rule-per-letter restriction is tried while the number of restrictions
// stays within `restriction_cap`.
std::optional<ExpansionData> find_expansion(const Substitution& sub, double tol = 1e-9,
                                            std::size_t restriction_cap = 4096);

bool check_expansion(const Substitution& sub, const ExpansionData& cand, double tol = 1e-9);

// Largest relative defect |lambda v(a) - sum| / (lambda v(a)) for each rule.
std::vector<double> rule_defects(const Substitution& sub, const ExpansionData& cand);

ExpansionData normalize_expansion(const ExpansionData& cand, double floor, double delta = 0.1);

Substitution power_substitution(const Substitution& sub, int n, std::size_t rule_cap = 200000);

// Returns an index into sub.rules_for(letter) for the letter at `position`.
using RuleChooser = std::function<std::size_t(std::size_t position, int letter)>;

RuleChooser first_rule_chooser();
RuleChooser random_rule_chooser(std::uint64_t seed);

Word expand_word(const Substitution& sub, std::span<const int> word, int steps,
                 const RuleChooser& chooser = first_rule_chooser());

// Incidence matrix entry (a,b): occurrences of b in rhs of the chosen rule of a.
std::vector<std::vector<double>> incidence_matrix(const Substitution& sub,
                                                  std::span<const std::size_t> rule_of_letter);

// Minimal n >= 1 with lambda^n > threshold.
int minimal_power(double lambda, double threshold = 2.0);

// The surface substitution a -> (ab^5)^4 ab^4, b -> (ab^5)^5 ab^4.
Substitution surface_substitution();
Substitution doubling_substitution();

}  // namespace domino
