#include "domino/orbit.hpp"

#include <map>
#include <stdexcept>

namespace domino {

long AccumulationTable::at(long j) const {
  if (!contains(j))
    throw std::out_of_range("accumulation index " + std::to_string(j) + " outside window");
  return values[static_cast<std::size_t>(j - lo)];
}

AccumulationTable accumulation(std::span<const long> u, long lo) {
  for (long x : u)
    if (x < 1) throw std::invalid_argument("accumulation increments must be positive");
  const long hi = lo + static_cast<long>(u.size());
  if (lo > 0 || hi < 0) throw std::invalid_argument("accumulation window must contain 0");
  AccumulationTable t;
  t.lo = lo;
  t.values.assign(u.size() + 1, 0);
  // Delta(0) = 0, forward sums to the right, negative sums to the left.
  const auto zero = static_cast<std::size_t>(-lo);
  for (std::size_t k = zero; k < u.size(); ++k) t.values[k + 1] = t.values[k] + u[k];
  for (std::size_t k = zero; k-- > 0;) t.values[k] = t.values[k + 1] - u[k];
  return t;
}

std::pair<long, long> OrbitPatch::children(std::size_t k, long j) const {
  const auto& acc = parents.at(k).accumulation;
  return {acc.at(j), acc.at(j + 1)};
}

OrbitPatch grow_orbit_patch(const Substitution& sub, int seed_letter, int depth,
                            const RuleChooser& chooser) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  if (seed_letter < 0 || seed_letter >= sub.letter_count())
    throw std::invalid_argument("seed letter out of range");
  OrbitPatch p;
  p.sub = sub;
  p.rows.push_back({0, 0, Word{seed_letter}});
  for (int i = 0; i < depth; ++i) {
    const OrbitRow& row = p.rows.back();
    ParentRow link;
    std::vector<long> u;
    Word next;
    for (std::size_t k = 0; k < row.word.size(); ++k) {
      const int a = row.word[k];
      const auto options = sub.rules_for(a);
      if (options.empty())
        throw std::invalid_argument("letter '" + sub.letters()[a] + "' has no rule");
      const std::size_t pick =
          options.size() == 1 ? 0 : chooser(k, a) % options.size();
      const std::size_t r = options[pick];
      link.rule_choice.push_back(r);
      const Word& rhs = sub.rules()[r].rhs;
      u.push_back(static_cast<long>(rhs.size()));
      next.insert(next.end(), rhs.begin(), rhs.end());
    }
    link.accumulation = accumulation(u, row.offset);
    p.parents.push_back(std::move(link));
    p.rows.push_back({i + 1, 0, std::move(next)});
  }
  return p;
}

std::vector<Diagnostic> validate_orbit(const OrbitPatch& patch) {
  std::vector<Diagnostic> out;
  if (patch.parents.size() + 1 != patch.rows.size() && !patch.rows.empty()) {
    out.push_back({"parent links do not match row count"});
    return out;
  }
  const auto rules = patch.sub.rules();
  for (std::size_t k = 0; k < patch.parents.size(); ++k) {
    const OrbitRow& top = patch.rows[k];
    const OrbitRow& bottom = patch.rows[k + 1];
    const ParentRow& link = patch.parents[k];
    auto where = [&](long j) {
      return "row " + std::to_string(top.index) + " position " + std::to_string(j) + ": ";
    };
    if (link.rule_choice.size() != top.word.size()) {
      out.push_back({"row " + std::to_string(top.index) + ": rule choices do not cover the row"});
      continue;
    }
    for (long j = top.offset; j < top.end(); ++j) {
      const std::size_t r = link.rule_choice[static_cast<std::size_t>(j - top.offset)];
      if (r >= rules.size()) {
        out.push_back({where(j) + "rule index out of range"});
        continue;
      }
      const Rule& rule = rules[r];
      if (rule.lhs != top.word[static_cast<std::size_t>(j - top.offset)]) {
        out.push_back({where(j) + "rule lhs differs from the parent letter"});
        continue;
      }
      if (!link.accumulation.contains(j) || !link.accumulation.contains(j + 1)) {
        out.push_back({where(j) + "accumulation window too small"});
        continue;
      }
      const long lo = link.accumulation.at(j), hi = link.accumulation.at(j + 1);
      bool ok = hi - lo == static_cast<long>(rule.rhs.size()) && lo >= bottom.offset &&
                hi <= bottom.end();
      for (long c = lo; ok && c < hi; ++c)
        ok = bottom.word[static_cast<std::size_t>(c - bottom.offset)] ==
             rule.rhs[static_cast<std::size_t>(c - lo)];
      if (!ok)
        out.push_back({where(j) + "children do not spell the rhs of rule " + std::to_string(r)});
    }
  }
  return out;
}

std::optional<std::size_t> OrbitGraphPatch::find(int row, long pos) const {
  auto it = index.find(key(row, pos));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

OrbitGraphPatch orbit_graph_of(const OrbitPatch& patch) {
  OrbitGraphPatch g;
  for (std::size_t k = 0; k < patch.rows.size(); ++k) {
    const OrbitRow& row = patch.rows[k];
    for (long j = row.offset; j < row.end(); ++j) {
      // Missing row neighbours or missing children.
      const bool edge_of_row = j == row.offset || j + 1 == row.end();
      const bool last = k + 1 == patch.rows.size();
      g.index.emplace(OrbitGraphPatch::key(row.index, j), g.vertices.size());
      g.vertices.push_back({row.index, j, row.word[static_cast<std::size_t>(j - row.offset)],
                            edge_of_row || last});
    }
  }
  for (std::size_t k = 0; k < patch.rows.size(); ++k) {
    const OrbitRow& row = patch.rows[k];
    for (long j = row.offset; j + 1 < row.end(); ++j)
      g.edges.push_back({*g.find(row.index, j), *g.find(row.index, j + 1), kNextLabel});
    if (k + 1 == patch.rows.size()) continue;
    const OrbitRow& below = patch.rows[k + 1];
    for (long j = row.offset; j < row.end(); ++j) {
      const auto [lo, hi] = patch.children(k, j);
      for (long c = lo; c < hi; ++c) {
        auto to = g.find(below.index, c);
        if (!to) continue;
        g.edges.push_back({*g.find(row.index, j), *to, static_cast<int>(c - lo)});
      }
    }
  }
  return g;
}

OrbitPatch subsampled_orbit(const OrbitPatch& patch, int n, int k) {
  if (n < 1) throw std::invalid_argument("power must be at least 1");
  if (k < 0 || k >= static_cast<int>(patch.rows.size()))
    throw std::invalid_argument("row offset outside the patch");
  OrbitPatch out;
  out.sub = power_substitution(patch.sub, n);
  std::map<Rule, std::size_t> rule_index;
  for (std::size_t r = 0; r < out.sub.rules().size(); ++r) rule_index.emplace(out.sub.rules()[r], r);

  for (std::size_t src = static_cast<std::size_t>(k); src < patch.rows.size();
       src += static_cast<std::size_t>(n)) {
    OrbitRow row = patch.rows[src];
    row.index = static_cast<int>(out.rows.size());
    out.rows.push_back(row);
    if (src + static_cast<std::size_t>(n) >= patch.rows.size()) break;
    const OrbitRow& top = patch.rows[src];
    const OrbitRow& bottom = patch.rows[src + static_cast<std::size_t>(n)];
    ParentRow link;
    std::vector<long> u;
    for (long j = top.offset; j < top.end(); ++j) {
      long lo = j, hi = j + 1;
      for (int step = 0; step < n; ++step) {
        const auto& acc = patch.parents[src + static_cast<std::size_t>(step)].accumulation;
        lo = acc.at(lo);
        hi = acc.at(hi);
      }
      Rule composed{top.word[static_cast<std::size_t>(j - top.offset)],
                    Word(bottom.word.begin() + (lo - bottom.offset),
                         bottom.word.begin() + (hi - bottom.offset))};
      auto it = rule_index.find(composed);
      if (it == rule_index.end())
        throw std::logic_error("composed parent map does not match a power rule");
      link.rule_choice.push_back(it->second);
      u.push_back(hi - lo);
    }
    link.accumulation = accumulation(u, top.offset);
    out.parents.push_back(std::move(link));
  }
  return out;
}

}  // namespace domino
