#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "domino/orbit.hpp"
#include "domino/superposition.hpp"

namespace domino {

struct BlockVertex {
  int row = 0;
  long col = 0;
};

// Graph of an (h,t)-block: rows of t, 2t, ..., t 2^{h-1} vertices.
struct BlockGraph {
  int h = 0;
  long t = 0;
  std::vector<BlockVertex> vertices;
  std::vector<LabeledEdge> edges;

  std::size_t id(int row, long col) const { return static_cast<std::size_t>(t * ((1L << row) - 1) + col); }
  long row_size(int row) const { return t << row; }
};

BlockGraph block_graph(int h, long t);

class PasteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbols on a small support of the orbit graph, with the support's edges.
struct BasePattern {
  std::vector<SuperSymbol> symbols;
  std::vector<LabeledEdge> edges;
};

struct PastedVertex {
  std::size_t block = 0;
  int row = 0;
  long col = 0;
};

struct PastedGraph {
  std::vector<BlockGraph> blocks;
  std::vector<std::size_t> base;  // first pasted vertex of each block
  std::vector<PastedVertex> vertices;
  std::vector<LabeledEdge> edges;
  std::size_t first_seam = 0;  // edges from here on join different blocks

  std::size_t seam_count() const { return edges.size() - first_seam; }
  std::size_t vertex(std::size_t block, int row, long col) const {
    return base[block] + blocks[block].id(row, col);
  }
};

PastedGraph paste(const BasePattern& pattern);

// Nearest-neighbour forbidden pairs (label, color at source, color at target).
struct NNForbiddenSet {
  std::vector<std::string> alphabet;
  std::set<std::tuple<int, int, int>> forbidden;

  bool forbids(int label, int a, int b) const { return forbidden.contains({label, a, b}); }
  int color_id(const std::string& name) const;
};

struct LiftedSymbol {
  SuperSymbol base;
  std::vector<int> coloring;  // indexed by BlockGraph::id
};

// First pasted edge matching a forbidden pair, if any.
std::optional<LabeledEdge> first_conflict(const PastedGraph& g,
                                          const std::vector<std::vector<int>>& colorings,
                                          const NNForbiddenSet& fs);

// A lifted triple (u, next v, child ell w) is forbidden when its base is, or when
// the pasted colorings contain a forbidden pair.
bool lifted_forbidden(const LiftedSymbol& u, const LiftedSymbol& v, const LiftedSymbol& w,
                      std::size_t ell, const NNForbiddenSet& fs);

// Support {v, u_1, ..., u_{n+1} = w_0, ..., w_ell}: next from u_1 to v, label-0 chain of n
// edges, then a next chain of ell edges. For n = 1 the support is the plain triple.
struct ReductionShape {
  int n = 1;
  std::size_t ell = 0;
  std::size_t vertex_count = 0;
  std::vector<LabeledEdge> edges;
  std::size_t u = 0, v = 0, w = 0;  // the three colored vertices
};

std::vector<ReductionShape> power_reduction(const Substitution& power_sub, int n);

struct ShapeEmbedding {
  std::size_t shape = 0;
  std::vector<std::size_t> vertices;  // orbit-graph vertex per shape vertex
};

struct EmbeddingScan {
  std::vector<ShapeEmbedding> embeddings;
  std::size_t skipped = 0;  // roots whose support leaves the patch
};

EmbeddingScan embed_shapes(const OrbitGraphPatch& g, const std::vector<ReductionShape>& shapes);

struct ReductionReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t not_applicable = 0;  // ell beyond the rhs of u's rule
  std::size_t skipped = 0;         // supports leaving the patch
  std::size_t uncolored = 0;       // some colored vertex has no symbol
};

// Colors each orbit-graph vertex with a lifted symbol over (A, R^n); nullptr when unknown.
using ReductionColoring = std::function<const LiftedSymbol*(std::size_t vertex)>;

ReductionReport check_reduction(const OrbitGraphPatch& g, const std::vector<ReductionShape>& shapes,
                                const ReductionColoring& z, const NNForbiddenSet& fs);

}  // namespace domino
