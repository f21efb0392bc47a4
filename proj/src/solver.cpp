#include "domino/solver.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace domino::solver {

void PatchInstance::check() const {
  if (alphabet.empty()) throw std::invalid_argument("alphabet is empty");
  if (alphabet.size() > 64) throw std::invalid_argument("alphabets are limited to 64 letters");
  if (!boundary.empty() && boundary.size() != vertex_count)
    throw std::invalid_argument("boundary flags must cover every vertex");
  for (const auto& e : edges)
    if (e.from >= vertex_count || e.to >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
  for (const auto& p : forbidden) {
    const std::size_t k = p.colors.size();
    if (k == 0) throw std::invalid_argument("forbidden pattern with empty support");
    for (int c : p.colors)
      if (c < 0 || static_cast<std::size_t>(c) >= alphabet.size())
        throw std::invalid_argument("pattern color outside the alphabet");
    std::vector<std::vector<std::size_t>> adj(k);
    for (const auto& e : p.edges) {
      if (e.from >= k || e.to >= k) throw std::invalid_argument("pattern edge endpoint out of range");
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
    }
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x])
        if (!seen[y]) seen[y] = true, stack.push_back(y);
    }
    if (std::count(seen.begin(), seen.end(), false) > 0)
      throw std::invalid_argument("forbidden pattern support is not connected");
  }
}

PatchInstance instance_from_orbit_graph(const OrbitGraphPatch& g, std::vector<std::string> alphabet,
                                        std::vector<ForbiddenPattern> forbidden) {
  PatchInstance inst;
  inst.vertex_count = g.vertices.size();
  inst.edges = g.edges;
  inst.alphabet = std::move(alphabet);
  inst.forbidden = std::move(forbidden);
  for (const auto& v : g.vertices) inst.boundary.push_back(v.boundary);
  return inst;
}

namespace {

struct Adjacency {
  std::vector<std::vector<std::pair<int, std::size_t>>> out, in;

  explicit Adjacency(const PatchInstance& inst) : out(inst.vertex_count), in(inst.vertex_count) {
    for (const auto& e : inst.edges) {
      out[e.from].emplace_back(e.label, e.to);
      in[e.to].emplace_back(e.label, e.from);
    }
  }
  bool has(std::size_t a, std::size_t b, int label) const {
    for (auto [l, t] : out[a])
      if (l == label && t == b) return true;
    return false;
  }
};

// Visiting order of the support: each vertex after the root is reached by an edge to an earlier one.
struct Plan {
  std::vector<std::size_t> order;
  std::vector<LabeledEdge> via;  // edge used to reach order[i], i >= 1
  std::vector<std::vector<LabeledEdge>> checks;  // edges closed when order[i] is placed
};

Plan plan_for(const ForbiddenPattern& p) {
  const std::size_t k = p.colors.size();
  Plan plan;
  std::vector<bool> placed(k, false);
  plan.order.push_back(0);
  plan.via.push_back({});
  placed[0] = true;
  while (plan.order.size() < k) {
    bool grew = false;
    for (const auto& e : p.edges) {
      if (placed[e.from] != placed[e.to]) {
        const std::size_t next = placed[e.from] ? e.to : e.from;
        placed[next] = true;
        plan.order.push_back(next);
        plan.via.push_back(e);
        grew = true;
        break;
      }
    }
    if (!grew) throw std::invalid_argument("forbidden pattern support is not connected");
  }
  std::vector<std::size_t> rank(k);
  for (std::size_t i = 0; i < k; ++i) rank[plan.order[i]] = i;
  plan.checks.resize(k);
  for (const auto& e : p.edges) plan.checks[std::max(rank[e.from], rank[e.to])].push_back(e);
  return plan;
}

void extend(const Adjacency& adj, const Plan& plan, std::size_t depth,
            std::vector<std::size_t>& img, std::vector<bool>& used,
            std::vector<std::vector<std::size_t>>& out) {
  if (depth == plan.order.size()) {
    out.push_back(img);
    return;
  }
  const std::size_t x = plan.order[depth];
  const LabeledEdge& e = plan.via[depth];
  const bool forward = e.to == x;
  const std::size_t anchor = img[forward ? e.from : e.to];
  const auto& cands = forward ? adj.out[anchor] : adj.in[anchor];
  for (auto [label, y] : cands) {
    if (label != e.label || used[y]) continue;
    img[x] = y;
    bool ok = true;
    for (const auto& f : plan.checks[depth])
      if (!adj.has(img[f.from], img[f.to], f.label)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    used[y] = true;
    extend(adj, plan, depth + 1, img, used, out);
    used[y] = false;
  }
}

std::vector<std::vector<std::size_t>> embeddings_with(const PatchInstance& inst, const Adjacency& adj,
                                                      const ForbiddenPattern& p) {
  const Plan plan = plan_for(p);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> img(p.colors.size());
  std::vector<bool> used(inst.vertex_count, false);
  for (std::size_t root = 0; root < inst.vertex_count; ++root) {
    if (!inst.boundary.empty() && inst.boundary[root]) continue;
    img[0] = root;
    bool loops_ok = true;
    for (const auto& f : plan.checks[0]) loops_ok = loops_ok && adj.has(root, root, f.label);
    if (!loops_ok) continue;
    used[root] = true;
    extend(adj, plan, 1, img, used, out);
    used[root] = false;
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> embeddings(const PatchInstance& inst, const ForbiddenPattern& p) {
  inst.check();
  return embeddings_with(inst, Adjacency(inst), p);
}

std::vector<Violation> verify(const PatchInstance& inst, const Assignment& asg) {
  inst.check();
  if (asg.size() != inst.vertex_count) throw std::invalid_argument("assignment size differs from the vertex count");
  for (int c : asg)
    if (c < 0 || static_cast<std::size_t>(c) >= inst.alphabet.size())
      throw std::invalid_argument("assignment is not total over the alphabet");
  const Adjacency adj(inst);
  std::vector<Violation> out;
  for (std::size_t pi = 0; pi < inst.forbidden.size(); ++pi) {
    const auto& p = inst.forbidden[pi];
    for (auto& img : embeddings_with(inst, adj, p)) {
      bool hit = true;
      for (std::size_t i = 0; i < img.size() && hit; ++i) hit = asg[img[i]] == p.colors[i];
      if (hit) out.push_back({pi, std::move(img)});
    }
  }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Budget: return "BUDGET";
  }
  return "?";
}

namespace {

using Domain = std::uint64_t;

// One scope with every forbidden tuple on it.
struct Constraint {
  std::vector<std::size_t> scope;
  std::vector<std::vector<int>> tuples;
};

class Search {
 public:
  Search(const PatchInstance& inst, std::size_t budget) : inst_(inst), budget_(budget) {
    const Adjacency adj(inst);
    std::map<std::vector<std::size_t>, std::size_t> by_scope;
    for (const auto& p : inst.forbidden)
      for (auto& img : embeddings_with(inst, adj, p)) {
        auto [it, fresh] = by_scope.emplace(img, cons_.size());
        if (fresh) cons_.push_back({img, {}});
        cons_[it->second].tuples.push_back(p.colors);
      }
    watch_.resize(inst.vertex_count);
    for (std::size_t ci = 0; ci < cons_.size(); ++ci) {
      auto& t = cons_[ci].tuples;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      for (std::size_t v : cons_[ci].scope) watch_[v].push_back(ci);
    }
    stats_.constraints = cons_.size();
  }

  std::optional<std::vector<Domain>> root_domains() {
    const Domain full = inst_.alphabet.size() == 64 ? ~Domain{0} : (Domain{1} << inst_.alphabet.size()) - 1;
    std::vector<Domain> dom(inst_.vertex_count, full);
    std::vector<std::size_t> all(cons_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (!propagate(dom, all)) return std::nullopt;
    return dom;
  }

  SolveResult run() {
    SolveResult res;
    const auto root = root_domains();
    if (!root) {
      res.status = Status::Unsat;
    } else {
      res.status = dfs(*root);
      if (res.status == Status::Sat) {
        for (Domain d : solution_) res.witness.push_back(std::countr_zero(d));
        if (!verify(inst_, res.witness).empty()) throw std::logic_error("solver produced a dirty witness");
      }
    }
    res.stats = stats_;
    return res;
  }

 private:
  // Drops values of each scope variable that only extend to forbidden tuples.
  bool revise(std::vector<Domain>& dom, const Constraint& c, std::vector<std::size_t>& changed) {
    const std::size_t k = c.scope.size();
    for (std::size_t i = 0; i < k; ++i) {
      unsigned long long others = 1;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) others *= static_cast<unsigned long long>(std::popcount(dom[c.scope[j]]));
      if (others > c.tuples.size()) continue;
      Domain d = dom[c.scope[i]];
      for (Domain rest = d; rest; rest &= rest - 1) {
        const int a = std::countr_zero(rest);
        unsigned long long hits = 0;
        for (const auto& t : c.tuples) {
          if (t[i] != a) continue;
          bool inside = true;
          for (std::size_t j = 0; j < k && inside; ++j)
            if (j != i) inside = (dom[c.scope[j]] >> t[j]) & 1;
          hits += inside;
        }
        if (hits == others) d &= ~(Domain{1} << a);
      }
      if (d != dom[c.scope[i]]) {
        stats_.removals += static_cast<std::size_t>(std::popcount(dom[c.scope[i]] ^ d));
        dom[c.scope[i]] = d;
        if (d == 0) return false;
        changed.push_back(c.scope[i]);
      }
    }
    return true;
  }

  bool propagate(std::vector<Domain>& dom, std::vector<std::size_t> queue) {
    std::vector<bool> queued(cons_.size(), false);
    for (std::size_t c : queue) queued[c] = true;
    std::deque<std::size_t> q(queue.begin(), queue.end());
    std::vector<std::size_t> changed;
    while (!q.empty()) {
      const std::size_t ci = q.front();
      q.pop_front();
      queued[ci] = false;
      changed.clear();
      if (!revise(dom, cons_[ci], changed)) return false;
      for (std::size_t v : changed)
        for (std::size_t other : watch_[v])
          if (!queued[other]) queued[other] = true, q.push_back(other);
    }
    return true;
  }

  Status dfs(const std::vector<Domain>& dom) {
    std::size_t best = dom.size();
    for (std::size_t v = 0; v < dom.size(); ++v) {
      if (std::popcount(dom[v]) <= 1) continue;
      if (best == dom.size() || std::popcount(dom[v]) < std::popcount(dom[best]) ||
          (std::popcount(dom[v]) == std::popcount(dom[best]) && watch_[v].size() > watch_[best].size()))
        best = v;
    }
    if (best == dom.size()) {
      solution_ = dom;
      return Status::Sat;
    }
    for (Domain rest = dom[best]; rest; rest &= rest - 1) {
      if (stats_.nodes >= budget_) return Status::Budget;
      ++stats_.nodes;
      std::vector<Domain> next = dom;
      next[best] = rest & (~rest + 1);
      if (!propagate(next, watch_[best])) continue;
      const Status s = dfs(next);
      if (s != Status::Unsat) return s;
    }
    return Status::Unsat;
  }

  const PatchInstance& inst_;
  std::size_t budget_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<Domain> solution_;
  SolveStats stats_;
};

}  // namespace

SolveResult solve(const PatchInstance& inst, std::size_t budget) {
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  inst.check();
  return Search(inst, budget).run();
}

std::optional<std::vector<std::uint64_t>> propagated_domains(const PatchInstance& inst) {
  inst.check();
  return Search(inst, 1).root_domains();
}

PatchInstance ball_instance(const PatchInstance& inst, std::size_t center, int r) {
  if (center >= inst.vertex_count) throw std::invalid_argument("ball center out of range");
  std::vector<std::vector<std::size_t>> adj(inst.vertex_count);
  for (const auto& e : inst.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<int> dist(inst.vertex_count, -1);
  std::deque<std::size_t> q{center};
  dist[center] = 0;
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop_front();
    if (dist[x] == r) continue;
    for (std::size_t y : adj[x])
      if (dist[y] < 0) dist[y] = dist[x] + 1, q.push_back(y);
  }
  std::vector<std::size_t> id(inst.vertex_count, inst.vertex_count);
  PatchInstance out;
  out.alphabet = inst.alphabet;
  out.forbidden = inst.forbidden;
  for (std::size_t v = 0; v < inst.vertex_count; ++v) {
    if (dist[v] < 0) continue;
    id[v] = out.vertex_count++;
    if (!inst.boundary.empty()) out.boundary.push_back(inst.boundary[v]);
  }
  for (const auto& e : inst.edges)
    if (id[e.from] < out.vertex_count && id[e.to] < out.vertex_count)
      out.edges.push_back({id[e.from], id[e.to], e.label});
  return out;
}

SemiDecision semi_decide(const std::function<PatchInstance(int)>& family, int max_radius,
                         std::size_t budget) {
  if (max_radius < 0) throw std::invalid_argument("max_radius must be non-negative");
  SemiDecision rep;
  for (int r = 0; r <= max_radius; ++r) {
    const SolveResult res = solve(family(r), budget);
    rep.per_radius.push_back(res.status);
    if (res.status == Status::Unsat) {
      rep.unsat_radius = r;
      break;
    }
    if (res.status == Status::Budget) {
      rep.budget_hit = true;
      break;
    }
  }
  return rep;
}

}  // namespace domino::solver
