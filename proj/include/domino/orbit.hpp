#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "domino/substitution.hpp"

namespace domino {

// Delta on the window [lo, lo + values.size() - 1].
struct AccumulationTable {
  long lo = 0;
  std::vector<long> values;

  long hi() const { return lo + static_cast<long>(values.size()) - 1; }
  bool contains(long j) const { return j >= lo && j <= hi(); }
  long at(long j) const;
};

// Increments u_k for k = lo, lo+1, ...; the result covers [lo, lo + |u|].
AccumulationTable accumulation(std::span<const long> u, long lo = 0);

struct OrbitRow {
  int index = 0;
  long offset = 0;
  Word word;

  long end() const { return offset + static_cast<long>(word.size()); }
};

// Links row k to row k+1: one rule per parent position and the child boundaries.
struct ParentRow {
  std::vector<std::size_t> rule_choice;
  AccumulationTable accumulation;
};

struct OrbitPatch {
  Substitution sub;
  std::vector<OrbitRow> rows;
  std::vector<ParentRow> parents;

  int depth() const { return static_cast<int>(rows.size()) - 1; }
  // Children of (row k, position j) as a half-open range in row k+1.
  std::pair<long, long> children(std::size_t k, long j) const;
  int letter(std::size_t k, long j) const { return rows[k].word.at(j - rows[k].offset); }
};

OrbitPatch grow_orbit_patch(const Substitution& sub, int seed_letter, int depth,
                            const RuleChooser& chooser = first_rule_chooser());

std::vector<Diagnostic> validate_orbit(const OrbitPatch& patch);

constexpr int kNextLabel = -1;

struct OrbitVertex {
  int row = 0;
  long pos = 0;
  int letter = 0;
  bool boundary = false;
};

struct LabeledEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int label = kNextLabel;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

struct OrbitGraphPatch {
  std::vector<OrbitVertex> vertices;
  std::vector<LabeledEdge> edges;
  std::unordered_map<std::uint64_t, std::size_t> index;

  std::optional<std::size_t> find(int row, long pos) const;
  static std::uint64_t key(int row, long pos) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)) << 40) ^
           static_cast<std::uint64_t>(pos + (1L << 39));
  }
};

OrbitGraphPatch orbit_graph_of(const OrbitPatch& patch);

// Rows k, k+n, k+2n, ... with composed parent maps; rules refer to power_substitution(sub, n).
OrbitPatch subsampled_orbit(const OrbitPatch& patch, int n, int k);

}  // namespace domino
