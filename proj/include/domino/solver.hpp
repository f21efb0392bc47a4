#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "domino/orbit.hpp"

namespace domino::solver {

// Support vertices are 0..colors.size()-1 and must be connected; vertex 0 is the root.
struct ForbiddenPattern {
  std::vector<int> colors;
  std::vector<LabeledEdge> edges;
};

struct PatchInstance {
  std::size_t vertex_count = 0;
  std::vector<LabeledEdge> edges;
  std::vector<std::string> alphabet;
  std::vector<ForbiddenPattern> forbidden;
  std::vector<bool> boundary;  // empty: no boundary; boundary vertices are never roots

  void check() const;
};

PatchInstance instance_from_orbit_graph(const OrbitGraphPatch& g, std::vector<std::string> alphabet,
                                        std::vector<ForbiddenPattern> forbidden);

// Vertex -> color index; -1 marks an unassigned vertex.
using Assignment = std::vector<int>;

// Injective, label-preserving maps of a pattern support into the graph (edges need not be induced).
std::vector<std::vector<std::size_t>> embeddings(const PatchInstance& inst, const ForbiddenPattern& p);

struct Violation {
  std::size_t pattern = 0;
  std::vector<std::size_t> image;
};

std::vector<Violation> verify(const PatchInstance& inst, const Assignment& asg);

enum class Status { Sat, Unsat, Budget };
std::string to_string(Status s);

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t removals = 0;
  std::size_t constraints = 0;
};

struct SolveResult {
  Status status = Status::Budget;
  Assignment witness;
  SolveStats stats;
};

SolveResult solve(const PatchInstance& inst, std::size_t budget = 1000000);

// Domains (bit i = alphabet letter i) after propagation at the root, before any
// decision; nullopt when some domain empties.
std::optional<std::vector<std::uint64_t>> propagated_domains(const PatchInstance& inst);

// Vertices within undirected distance r of `center`, with the induced edges.
PatchInstance ball_instance(const PatchInstance& inst, std::size_t center, int r);

struct SemiDecision {
  std::vector<Status> per_radius;
  std::optional<int> unsat_radius;
  bool budget_hit = false;
  // Satisfiable patches say nothing about the infinite problem.
  bool inconclusive() const { return !unsat_radius.has_value(); }
};

SemiDecision semi_decide(const std::function<PatchInstance(int)>& family, int max_radius,
                         std::size_t budget);

}  // namespace domino::solver
