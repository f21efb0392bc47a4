#include "domino/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace domino {

long snapped_floor(double x, double rel) {
  return static_cast<long>(std::floor(x + rel * std::max(1.0, std::abs(x))));
}

std::string to_string(const SuperSymbol& s, const Substitution& sub) {
  std::ostringstream os;
  os << "((" << sub.letters()[s.rule.lhs] << ',' << sub.format(s.rule.rhs) << "),(" << s.h << ','
     << s.t << "),[";
  for (std::size_t i = 0; i < s.anchors.size(); ++i)
    os << (i ? "," : "") << '(' << s.anchors[i].first << ',' << s.anchors[i].second << ')';
  os << "])";
  return os.str();
}

void require_normalized(const ExpansionData& exp) {
  if (!(exp.lambda > 2.0)) throw std::invalid_argument("superposition needs lambda > 2");
  for (double x : exp.v)
    if (!(x > 4.0)) throw std::invalid_argument("superposition needs every weight > 4");
}

namespace {

const double kLog2 = std::numbers::ln2;
// Column indices grow like 2^row, so alignment cannot afford the symbol tolerance.
const double kAlignTol = 1e-13;

// Per-rule constants: c_i = (sum of the first i weights) / (2 lambda).
struct RuleConstants {
  std::size_t index = 0;
  const Rule* rule = nullptr;
  double half_v = 0.0;
  std::vector<double> c;
};

RuleConstants constants_for(const Rule& rule, std::size_t index, const ExpansionData& exp) {
  RuleConstants rc;
  rc.index = index;
  rc.rule = &rule;
  rc.half_v = exp.v.at(rule.lhs) / 2.0;
  double acc = 0.0;
  for (int x : rule.rhs) {
    rc.c.push_back(acc / (2.0 * exp.lambda));
    acc += exp.v.at(x);
  }
  return rc;
}

void put(std::string& key, long x) {
  const auto v = static_cast<std::int32_t>(x);
  char buf[4];
  std::memcpy(buf, &v, 4);
  key.append(buf, 4);
}

long get(const std::string& key, std::size_t slot) {
  std::int32_t v;
  std::memcpy(&v, key.data() + 4 * slot, 4);
  return v;
}

void pack_at(const RuleConstants& rc, double u, double tau, int h, std::string& key) {
  key.clear();
  put(key, static_cast<long>(rc.index));
  put(key, h);
  put(key, snapped_floor(u + rc.half_v * tau));
  const double scale = std::ldexp(1.0, h);
  for (double c : rc.c) put(key, snapped_floor(scale * (u + c * tau)));
}

int h_of(double lambda, double ytil) {
  return static_cast<int>(snapped_floor((std::log(lambda) + ytil) / kLog2));
}

}  // namespace

std::string pack_symbol(std::size_t rule_index, const SuperSymbol& s) {
  std::string key;
  put(key, static_cast<long>(rule_index));
  put(key, s.h);
  put(key, s.t);
  for (auto [b, bit] : s.anchors) put(key, 2 * b + bit);
  return key;
}

SuperSymbol symbol_at(const Rule& rule, double u, double tau, int h, const ExpansionData& exp) {
  const RuleConstants rc = constants_for(rule, 0, exp);
  SuperSymbol s;
  s.rule = rule;
  s.h = h;
  s.t = snapped_floor(u + rc.half_v * tau);
  const double scale = std::ldexp(1.0, h);
  for (double c : rc.c) {
    const long n = snapped_floor(scale * (u + c * tau));
    const long b = n >= 0 ? n / 2 : -((-n + 1) / 2);
    s.anchors.emplace_back(b, static_cast<int>(n - 2 * b));
  }
  return s;
}

SuperSymbol symbol_from_offsets(const Rule& rule, const OffsetParams& off,
                                const ExpansionData& exp) {
  require_normalized(exp);
  if (!(off.u >= 0.0 && off.u < 1.0)) throw std::invalid_argument("u must lie in [0,1)");
  if (!(off.ytil >= 0.0 && off.ytil < kLog2))
    throw std::invalid_argument("ytil must lie in [0, log 2)");
  return symbol_at(rule, off.u, std::exp(-off.ytil), h_of(exp.lambda, off.ytil), exp);
}

std::pair<double, double> tau_slab(int h, double lambda) {
  const double lo = std::max(0.5, lambda / std::ldexp(1.0, h + 1));
  const double hi = std::min(1.0, lambda / std::ldexp(1.0, h));
  return {lo, hi};
}

std::pair<int, int> h_range(double lambda) {
  // tau ranges over (1/2, 1]; the top h only occurs when its slab has width.
  const int lo = h_of(lambda, 0.0);
  const auto [a, b] = tau_slab(lo + 1, lambda);
  return {lo, a < b ? lo + 1 : lo};
}

bool symbol_within_bounds(const SuperSymbol& s, const ExpansionData& exp) {
  const double va = exp.v.at(s.rule.lhs);
  const auto [hlo, hhi] = h_range(exp.lambda);
  if (s.h < hlo || s.h > hhi || s.h < 1) return false;
  if (s.t < static_cast<long>(std::floor(va / 4.0)) ||
      s.t > static_cast<long>(std::floor(1.0 + va / 2.0)))
    return false;
  if (s.anchors.size() != s.rule.rhs.size()) return false;
  const long bmax = (1L << (s.h - 1)) * (s.t + 1) - 1;
  long prev = -1;
  for (auto [b, bit] : s.anchors) {
    if (b < 0 || b > bmax || (bit != 0 && bit != 1)) return false;
    if (2 * b + bit < prev) return false;
    prev = 2 * b + bit;
  }
  return true;
}

SymbolAlphabet::SymbolAlphabet(Substitution sub, ExpansionData exp, std::vector<std::string> keys)
    : sub_(std::move(sub)), exp_(std::move(exp)), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

SuperSymbol SymbolAlphabet::symbol(std::size_t i) const {
  const std::string& key = keys_.at(i);
  SuperSymbol s;
  s.rule = sub_.rules()[static_cast<std::size_t>(get(key, 0))];
  s.h = static_cast<int>(get(key, 1));
  s.t = get(key, 2);
  for (std::size_t k = 3; k < key.size() / 4; ++k) {
    const long n = get(key, k);
    s.anchors.emplace_back(n / 2, static_cast<int>(n % 2));
  }
  return s;
}

bool SymbolAlphabet::contains(const SuperSymbol& s) const {
  const auto rules = sub_.rules();
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (rules[r] != s.rule) continue;
    if (std::binary_search(keys_.begin(), keys_.end(), pack_symbol(r, s))) return true;
  }
  return false;
}

std::size_t SymbolAlphabet::count_for_rule(std::size_t rule_index) const {
  return static_cast<std::size_t>(std::count_if(keys_.begin(), keys_.end(), [&](const auto& k) {
    return static_cast<std::size_t>(get(k, 0)) == rule_index;
  }));
}

namespace {

template <class Task>
std::vector<std::string> run_parallel(std::size_t count, int jobs, Task task) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count));
  std::vector<std::unordered_set<std::string>> found(workers);
  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) task(i, found[w]);
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body, w);
  }
  std::unordered_set<std::string> merged;
  for (auto& f : found) merged.merge(f);
  return {merged.begin(), merged.end()};
}

std::vector<RuleConstants> all_constants(const Substitution& sub, const ExpansionData& exp) {
  std::vector<RuleConstants> out;
  for (std::size_t r = 0; r < sub.rules().size(); ++r)
    out.push_back(constants_for(sub.rules()[r], r, exp));
  return out;
}

// Lines u + slope * tau = k * step for integer k in [k_lo, k_hi].
struct LineFamily {
  double slope;
  double step;
  long k_lo;
  long k_hi;
};

}  // namespace

std::vector<std::string> grid_symbols(const Substitution& sub, const ExpansionData& exp, int n,
                                      int jobs) {
  require_normalized(exp);
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  const auto consts = all_constants(sub, exp);
  const std::size_t rows = static_cast<std::size_t>(n) * consts.size();
  return run_parallel(rows, jobs, [&](std::size_t task, std::unordered_set<std::string>& out) {
    const RuleConstants& rc = consts[task / static_cast<std::size_t>(n)];
    const long q = static_cast<long>(task % static_cast<std::size_t>(n));
    const double ytil = static_cast<double>(q) / n * kLog2;
    const double tau = std::exp(-ytil);
    const int h = h_of(exp.lambda, ytil);
    std::string key;
    for (long p = 0; p < n; ++p) {
      pack_at(rc, static_cast<double>(p) / n, tau, h, key);
      out.insert(key);
    }
  });
}

std::vector<std::string> arrangement_symbols(const Substitution& sub, const ExpansionData& exp) {
  require_normalized(exp);
  const auto consts = all_constants(sub, exp);
  const auto [hlo, hhi] = h_range(exp.lambda);

  struct Slab {
    const RuleConstants* rc;
    int h;
    double lo, hi;
    std::vector<LineFamily> families;
  };
  std::vector<Slab> slabs;
  for (const auto& rc : consts)
    for (int h = hlo; h <= hhi; ++h) {
      const auto [lo, hi] = tau_slab(h, exp.lambda);
      if (!(lo < hi)) continue;
      Slab s{&rc, h, lo, hi, {}};
      const double scale = std::ldexp(1.0, h);
      auto add = [&](double slope, double step) {
        // Keep only lines meeting [0,1] x [lo,hi].
        const long k0 = static_cast<long>(std::floor(slope * lo / step)) - 1;
        const long k1 = static_cast<long>(std::ceil((1.0 + slope * hi) / step)) + 1;
        for (auto& f : s.families)
          if (std::abs(f.slope - slope) < 1e-15 && f.step == step) return;
        s.families.push_back({slope, step, k0, k1});
      };
      for (double c : rc.c) add(c, 1.0 / scale);
      add(rc.half_v, 1.0);
      slabs.push_back(std::move(s));
    }

  // One task per (slab, family pair) plus one per slab for the top edge.
  struct Task {
    std::size_t slab;
    std::size_t fa, fb;  // fb == npos marks the top-edge sweep
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < slabs.size(); ++i) {
    const std::size_t m = slabs[i].families.size();
    tasks.push_back({i, 0, std::string::npos});
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) tasks.push_back({i, a, b});
  }

  return run_parallel(tasks.size(), 1, [&](std::size_t ti, std::unordered_set<std::string>& out) {
    const Task& task = tasks[ti];
    const Slab& s = slabs[task.slab];
    std::string key;
    auto sample = [&](double u, double tau) {
      if (!(u >= 0.0 && u < 1.0 && tau > s.lo && tau <= s.hi)) return;
      pack_at(*s.rc, u, tau, s.h, key);
      out.insert(key);
    };
    // Bisectors of the four sectors around the crossing of two lines.
    auto around = [&](double u, double tau, double du1, double dt1, double du2, double dt2) {
      for (double eps : {1e-5, 1e-7})
        for (int a : {-1, 1})
          for (int b : {-1, 1})
            sample(u + eps * (a * du1 + b * du2), tau + eps * (a * dt1 + b * dt2));
    };
    auto direction = [](double slope) {
      const double norm = std::hypot(slope, 1.0);
      return std::pair{-slope / norm, 1.0 / norm};
    };

    if (task.fb == std::string::npos) {
      // Top edge of the slab is part of the domain: sweep its crossings.
      for (const auto& f : s.families) {
        const auto [du, dt] = direction(f.slope);
        for (long k = f.k_lo; k <= f.k_hi; ++k) {
          const double u = k * f.step - f.slope * s.hi;
          sample(u, s.hi);
          sample(u + 1e-7, s.hi);
          around(u, s.hi, du, dt, 1.0, 0.0);
        }
      }
      // The bottom edge and the corners of the slab.
      for (const auto& f : s.families) {
        const auto [du, dt] = direction(f.slope);
        for (long k = f.k_lo; k <= f.k_hi; ++k)
          around(k * f.step - f.slope * s.lo, s.lo, du, dt, 1.0, 0.0);
      }
      return;
    }

    const LineFamily& A = s.families[task.fa];
    const LineFamily& B = s.families[task.fb];
    const double dc = A.slope - B.slope;
    if (std::abs(dc) < 1e-15) return;
    const auto [dua, dta] = direction(A.slope);
    const auto [dub, dtb] = direction(B.slope);
    for (long ka = A.k_lo; ka <= A.k_hi; ++ka) {
      const double ma = ka * A.step;
      // tau = (ma - mb) / dc in [lo, hi]  =>  mb between ma - dc*lo and ma - dc*hi.
      double m1 = ma - dc * s.lo, m2 = ma - dc * s.hi;
      if (m1 > m2) std::swap(m1, m2);
      const long kb0 = std::max(B.k_lo, static_cast<long>(std::floor(m1 / B.step)) - 1);
      const long kb1 = std::min(B.k_hi, static_cast<long>(std::ceil(m2 / B.step)) + 1);
      for (long kb = kb0; kb <= kb1; ++kb) {
        const double tau = (ma - kb * B.step) / dc;
        if (tau < s.lo - 1e-12 || tau > s.hi + 1e-12) continue;
        const double u = ma - A.slope * tau;
        if (u < -1e-12 || u > 1.0 + 1e-12) continue;
        around(u, tau, dua, dta, dub, dtb);
      }
    }
  });
}

SymbolAlphabet enumerate_alphabet(const Substitution& sub, const ExpansionData& exp,
                                  const EnumerationOptions& opts) {
  require_normalized(exp);
  if (opts.grid_n < 1) throw std::invalid_argument("grid size must be positive");
  std::vector<std::pair<int, std::size_t>> history;
  std::vector<std::string> extra;
  if (opts.complete) extra = arrangement_symbols(sub, exp);

  auto collect = [&](int n) {
    auto keys = grid_symbols(sub, exp, n, opts.jobs);
    history.emplace_back(n, keys.size());
    keys.insert(keys.end(), extra.begin(), extra.end());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
  };

  int n = opts.grid_n;
  auto current = collect(n);
  for (int r = 0; r < opts.max_refinements; ++r) {
    auto finer = collect(2 * n);
    const bool stable = finer == current;
    current = std::move(finer);
    n *= 2;
    if (stable) {
      SymbolAlphabet out(sub, exp, std::move(current));
      out.history = std::move(history);
      out.final_grid = n;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "symbol set still changing at grid " << n << " (counts:";
  for (auto [g, c] : history) msg << ' ' << g << ':' << c;
  msg << "); use the arrangement completion or the LP feasibility check";
  throw EnumerationDidNotStabilize(msg.str());
}

bool triple_allowed(const SuperSymbol& bu, const SuperSymbol& bv, const SuperSymbol& bw,
                    std::size_t ell) {
  const std::size_t k = bu.rule.rhs.size();
  if (ell >= k || bu.anchors.size() != k)
    throw std::invalid_argument("child label outside the parent rule");
  if (bw.rule.lhs != bu.rule.rhs[ell]) return false;
  if (bu.h != bv.h) return false;
  const auto [b_l, s_l] = bu.anchors[ell];
  if (ell + 1 < k) {
    const auto [b_n, s_n] = bu.anchors[ell + 1];
    return 2 * (b_n - b_l) + (s_n - s_l) == bw.t;
  }
  if (bv.anchors.empty()) return false;
  const auto [bv0, sv0] = bv.anchors.front();
  const long half = (1L << (bu.h - 1)) * bu.t;
  return 2 * (half + bv0 - b_l) + (sv0 - s_l) == bw.t;
}

const WitnessCell& Witness::at(int row, long pos) const {
  auto it = index.find(OrbitGraphPatch::key(row, pos));
  if (it == index.end()) throw std::out_of_range("no witness cell at this position");
  return cells[it->second];
}

Witness build_witness(const OrbitPatch& patch, const TilingLayout& layout,
                      const ExpansionData& exp) {
  require_normalized(exp);
  Witness w;
  const auto rules = patch.sub.rules();
  for (std::size_t k = 0; k < patch.rows.size(); ++k) {
    const OrbitRow& row = patch.rows[k];
    for (long j = row.offset; j < row.end(); ++j) {
      WitnessCell cell;
      cell.row = row.index;
      cell.pos = j;
      cell.rule_index = k < patch.parents.size()
                            ? patch.parents[k].rule_choice[static_cast<std::size_t>(j - row.offset)]
                            : patch.sub.rules_for(patch.letter(k, j)).front();
      const Point p = layout.at(row.index, j);
      // Binary row whose height lies in [p.y, p.y + log 2).
      cell.ref_row = snapped_floor(-p.y / kLog2, kAlignTol);
      const double yref = -static_cast<double>(cell.ref_row) * kLog2;
      const double ytil = std::clamp(yref - p.y, 0.0, std::nextafter(kLog2, 0.0));
      const double xs = p.x / (2.0 * std::exp(yref));
      cell.ref_col = snapped_floor(xs, kAlignTol);
      const double u = std::clamp(xs - static_cast<double>(cell.ref_col), 0.0,
                                  std::nextafter(1.0, 0.0));
      cell.offsets = {u, ytil};
      cell.symbol = symbol_from_offsets(rules[cell.rule_index], cell.offsets, exp);
      w.index.emplace(OrbitGraphPatch::key(row.index, j), w.cells.size());
      w.cells.push_back(std::move(cell));
    }
  }
  return w;
}

TripleReport scan_triples(const OrbitPatch& patch, const Witness& witness,
                          std::size_t max_examples) {
  TripleReport rep;
  for (std::size_t k = 0; k + 1 < patch.rows.size(); ++k) {
    const OrbitRow& row = patch.rows[k];
    const OrbitRow& below = patch.rows[k + 1];
    for (long j = row.offset; j + 1 < row.end(); ++j) {
      const auto& u = witness.at(row.index, j).symbol;
      const auto& v = witness.at(row.index, j + 1).symbol;
      const auto [lo, hi] = patch.children(k, j);
      for (long c = lo; c < hi; ++c) {
        const auto& wsym = witness.at(below.index, c).symbol;
        ++rep.checked;
        if (!triple_allowed(u, v, wsym, static_cast<std::size_t>(c - lo))) {
          ++rep.forbidden;
          if (rep.examples.size() < max_examples)
            rep.examples.push_back("u=(" + std::to_string(row.index) + "," + std::to_string(j) +
                                   ") child " + std::to_string(c - lo));
        }
      }
    }
  }
  return rep;
}

}  // namespace domino
