#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "domino/geometry.hpp"
#include "domino/orbit.hpp"
#include "domino/substitution.hpp"

namespace domino {

// floor() that treats values within `rel` (relative) below an integer as that integer.
long snapped_floor(double x, double rel = 1e-9);

// u = x-offset / (2 e^y) in [0,1), ytil in [0, log 2).
struct OffsetParams {
  double u = 0.0;
  double ytil = 0.0;
};

struct SuperSymbol {
  Rule rule;
  int h = 0;
  long t = 0;
  std::vector<std::pair<long, int>> anchors;  // (b_i, s_i)

  friend bool operator==(const SuperSymbol&, const SuperSymbol&) = default;
  friend auto operator<=>(const SuperSymbol&, const SuperSymbol&) = default;
};

std::string to_string(const SuperSymbol& s, const Substitution& sub);

// Requires lambda > 2 and every weight > 4.
void require_normalized(const ExpansionData& exp);

SuperSymbol symbol_from_offsets(const Rule& rule, const OffsetParams& off,
                                const ExpansionData& exp);

// Same symbol, evaluated from tau = e^{-ytil} with h given explicitly.
SuperSymbol symbol_at(const Rule& rule, double u, double tau, int h, const ExpansionData& exp);

// Interval of tau in (1/2, 1] on which the h formula yields `h`; empty if first > second.
std::pair<double, double> tau_slab(int h, double lambda);
std::pair<int, int> h_range(double lambda);

bool symbol_within_bounds(const SuperSymbol& s, const ExpansionData& exp);

struct EnumerationOptions {
  int grid_n = 1024;
  int max_refinements = 4;
  // Adds one sample per cell of the line arrangement cut out by the floor thresholds.
  bool complete = true;
  int jobs = 1;
};

class EnumerationDidNotStabilize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SymbolAlphabet {
 public:
  SymbolAlphabet() = default;
  SymbolAlphabet(Substitution sub, ExpansionData exp, std::vector<std::string> keys);

  const Substitution& substitution() const { return sub_; }
  const ExpansionData& expansion() const { return exp_; }
  std::size_t size() const { return keys_.size(); }
  SuperSymbol symbol(std::size_t i) const;
  bool contains(const SuperSymbol& s) const;
  std::size_t count_for_rule(std::size_t rule_index) const;
  const std::vector<std::string>& keys() const { return keys_; }

  // Grid sizes visited and the symbol count found by grid sampling alone at each.
  std::vector<std::pair<int, std::size_t>> history;
  int final_grid = 0;

  friend bool operator==(const SymbolAlphabet& a, const SymbolAlphabet& b) {
    return a.keys_ == b.keys_;
  }

 private:
  Substitution sub_;
  ExpansionData exp_;
  std::vector<std::string> keys_;  // sorted packed symbols
};

std::string pack_symbol(std::size_t rule_index, const SuperSymbol& s);

SymbolAlphabet enumerate_alphabet(const Substitution& sub, const ExpansionData& exp,
                                  const EnumerationOptions& opts = {});

// Symbols from the grid alone (no refinement, no completion) for one grid size.
std::vector<std::string> grid_symbols(const Substitution& sub, const ExpansionData& exp, int n,
                                      int jobs = 1);
std::vector<std::string> arrangement_symbols(const Substitution& sub, const ExpansionData& exp);

bool triple_allowed(const SuperSymbol& bu, const SuperSymbol& bv, const SuperSymbol& bw,
                    std::size_t ell);

struct WitnessCell {
  int row = 0;
  long pos = 0;
  std::size_t rule_index = 0;
  long ref_row = 0;  // row of the aligned binary tile
  long ref_col = 0;
  OffsetParams offsets;
  SuperSymbol symbol;
};

struct Witness {
  std::vector<WitnessCell> cells;
  std::unordered_map<std::uint64_t, std::size_t> index;

  const WitnessCell& at(int row, long pos) const;
};

Witness build_witness(const OrbitPatch& patch, const TilingLayout& layout,
                      const ExpansionData& exp);

struct TripleReport {
  std::size_t checked = 0;
  std::size_t forbidden = 0;
  std::vector<std::string> examples;
};

// Every (u, next(u), child_l(u)) triple present in the patch.
TripleReport scan_triples(const OrbitPatch& patch, const Witness& witness,
                          std::size_t max_examples = 5);

}  // namespace domino
