#include "domino/lift.hpp"

#include <algorithm>
#include <map>

namespace domino {

BlockGraph block_graph(int h, long t) {
  if (h < 1 || t < 1) throw std::invalid_argument("block graph needs h, t >= 1");
  if (h > 30) throw std::invalid_argument("block height too large");
  BlockGraph g;
  g.h = h;
  g.t = t;
  for (int r = 0; r < h; ++r)
    for (long c = 0; c < g.row_size(r); ++c) g.vertices.push_back({r, c});
  for (int r = 0; r < h; ++r) {
    for (long c = 0; c + 1 < g.row_size(r); ++c) g.edges.push_back({g.id(r, c), g.id(r, c + 1), kNextLabel});
    if (r == 0) continue;
    for (long c = 0; c < g.row_size(r); ++c)
      g.edges.push_back({g.id(r - 1, c / 2), g.id(r, c), static_cast<int>(c % 2)});
  }
  return g;
}

PastedGraph paste(const BasePattern& pattern) {
  PastedGraph g;
  for (const auto& s : pattern.symbols) {
    g.base.push_back(g.vertices.size());
    g.blocks.push_back(block_graph(s.h, s.t));
    const BlockGraph& b = g.blocks.back();
    for (const auto& e : b.edges) g.edges.push_back({g.base.back() + e.from, g.base.back() + e.to, e.label});
    for (const auto& v : b.vertices) g.vertices.push_back({g.blocks.size() - 1, v.row, v.col});
  }
  g.first_seam = g.edges.size();

  std::map<std::size_t, std::size_t> next_of;
  for (const auto& e : pattern.edges) {
    if (e.from >= pattern.symbols.size() || e.to >= pattern.symbols.size())
      throw PasteError("pattern edge refers to a missing vertex");
    if (e.label != kNextLabel) continue;
    const SuperSymbol& u = pattern.symbols[e.from];
    const SuperSymbol& v = pattern.symbols[e.to];
    if (u.h != v.h) throw PasteError("rule 1: next-joined blocks differ in height");
    next_of[e.from] = e.to;
    for (int r = 0; r < u.h; ++r)
      g.edges.push_back({g.vertex(e.from, r, g.blocks[e.from].row_size(r) - 1), g.vertex(e.to, r, 0),
                         kNextLabel});
  }

  std::set<std::pair<std::size_t, int>> taken;  // (bottom vertex, label) already used
  for (const auto& e : pattern.edges) {
    if (e.label == kNextLabel) continue;
    const SuperSymbol& u = pattern.symbols[e.from];
    const SuperSymbol& w = pattern.symbols[e.to];
    const auto ell = static_cast<std::size_t>(e.label);
    if (ell >= u.anchors.size()) throw PasteError("rule 2: child label beyond the parent's anchors");
    const auto [b, s] = u.anchors[ell];
    const int bottom = u.h - 1;
    const long width = g.blocks[e.from].row_size(bottom);
    for (long j = 0; j < w.t; ++j) {
      long idx = b + (s + j) / 2;
      const int label = static_cast<int>((s + j) % 2);
      std::size_t parent;
      if (idx < width) {
        parent = g.vertex(e.from, bottom, idx);
      } else {
        auto nv = next_of.find(e.from);
        if (nv == next_of.end())
          throw PasteError("rule 2: child seam overflows and the parent has no next neighbour");
        idx -= width;
        if (idx >= g.blocks[nv->second].row_size(bottom))
          throw PasteError("rule 2: child seam overflows the next neighbour as well");
        parent = g.vertex(nv->second, bottom, idx);
      }
      if (!taken.insert({parent, label}).second)
        throw PasteError("rule 2: two child seams meet the same bottom vertex with label " +
                         std::to_string(label));
      g.edges.push_back({parent, g.vertex(e.to, 0, j), label});
    }
  }
  return g;
}

int NNForbiddenSet::color_id(const std::string& name) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown color '" + name + "'");
}

std::optional<LabeledEdge> first_conflict(const PastedGraph& g,
                                          const std::vector<std::vector<int>>& colorings,
                                          const NNForbiddenSet& fs) {
  auto color = [&](std::size_t v) {
    const PastedVertex& pv = g.vertices[v];
    return colorings.at(pv.block).at(g.blocks[pv.block].id(pv.row, pv.col));
  };
  for (const auto& e : g.edges)
    if (fs.forbids(e.label, color(e.from), color(e.to))) return e;
  return std::nullopt;
}

bool lifted_forbidden(const LiftedSymbol& u, const LiftedSymbol& v, const LiftedSymbol& w,
                      std::size_t ell, const NNForbiddenSet& fs) {
  if (ell >= u.base.rule.rhs.size()) return true;
  if (!triple_allowed(u.base, v.base, w.base, ell)) return true;
  for (const LiftedSymbol* s : {&u, &v, &w})
    if (s->coloring.size() != static_cast<std::size_t>(s->base.t * ((1L << s->base.h) - 1)))
      throw std::invalid_argument("block coloring does not cover its block");
  BasePattern p{{u.base, v.base, w.base}, {{0, 1, kNextLabel}, {0, 2, static_cast<int>(ell)}}};
  PastedGraph g;
  try {
    g = paste(p);
  } catch (const PasteError&) {
    return true;
  }
  return first_conflict(g, {u.coloring, v.coloring, w.coloring}, fs).has_value();
}

std::vector<ReductionShape> power_reduction(const Substitution& power_sub, int n) {
  if (n < 1) throw std::invalid_argument("power must be at least 1");
  std::vector<ReductionShape> out;
  for (std::size_t ell = 0; ell < power_sub.max_rule_length(); ++ell) {
    ReductionShape s;
    s.n = n;
    s.ell = ell;
    if (n == 1) {
      s.vertex_count = 3;
      s.u = 0;
      s.v = 1;
      s.w = 2;
      s.edges = {{0, 1, kNextLabel}, {0, 2, static_cast<int>(ell)}};
      out.push_back(std::move(s));
      continue;
    }
    // 0 = v, 1..n+1 = u_1..u_{n+1} (= w_0), then w_1..w_ell.
    s.vertex_count = static_cast<std::size_t>(n) + 2 + ell;
    s.v = 0;
    s.u = 1;
    s.edges.push_back({1, 0, kNextLabel});
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) s.edges.push_back({i, i + 1, 0});
    const std::size_t w0 = static_cast<std::size_t>(n) + 1;
    for (std::size_t j = 0; j < ell; ++j) s.edges.push_back({w0 + j, w0 + j + 1, kNextLabel});
    s.w = w0 + ell;
    out.push_back(std::move(s));
  }
  return out;
}

EmbeddingScan embed_shapes(const OrbitGraphPatch& g, const std::vector<ReductionShape>& shapes) {
  const std::size_t nv = g.vertices.size();
  std::vector<std::map<int, std::size_t>> out(nv);
  for (const auto& e : g.edges) out[e.from].emplace(e.label, e.to);
  EmbeddingScan scan;
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const ReductionShape& s = shapes[si];
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(s.vertex_count);
    for (const auto& e : s.edges) adj[e.from].emplace_back(e.to, e.label);
    for (std::size_t root = 0; root < nv; ++root) {
      // Supports are trees hanging off u; walk their edges from the root.
      std::vector<std::size_t> img(s.vertex_count, nv);
      img[s.u] = root;
      std::vector<std::size_t> stack{s.u};
      bool ok = true;
      while (ok && !stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (auto [y, label] : adj[x]) {
          auto it = out[img[x]].find(label);
          if (it == out[img[x]].end()) {
            ok = false;
            break;
          }
          img[y] = it->second;
          stack.push_back(y);
        }
      }
      if (!ok) {
        ++scan.skipped;
        continue;
      }
      scan.embeddings.push_back({si, std::move(img)});
    }
  }
  return scan;
}

ReductionReport check_reduction(const OrbitGraphPatch& g, const std::vector<ReductionShape>& shapes,
                                const ReductionColoring& z, const NNForbiddenSet& fs) {
  const EmbeddingScan scan = embed_shapes(g, shapes);
  ReductionReport rep;
  rep.skipped = scan.skipped;
  for (const auto& e : scan.embeddings) {
    const ReductionShape& s = shapes[e.shape];
    const LiftedSymbol* zu = z(e.vertices[s.u]);
    const LiftedSymbol* zv = z(e.vertices[s.v]);
    const LiftedSymbol* zw = z(e.vertices[s.w]);
    if (!zu || !zv || !zw) {
      ++rep.uncolored;
      continue;
    }
    if (s.ell >= zu->base.rule.rhs.size()) {
      ++rep.not_applicable;
      continue;
    }
    ++rep.checked;
    if (lifted_forbidden(*zu, *zv, *zw, s.ell, fs)) ++rep.violations;
  }
  return rep;
}

}  // namespace domino
