#include "domino/surface.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace domino::surface {

const std::array<Gen, 8> kRelator = {0, 2, 1, 3, 4, 6, 5, 7};

namespace {

constexpr Gen kA = 0, kBinv = 3;

std::array<Gen, 8> make_successor() {
  std::array<Gen, 8> s{};
  for (int i = 0; i < 8; ++i) s[kRelator[i]] = kRelator[(i + 1) % 8];
  return s;
}

std::array<Gen, 8> make_rotation() {
  const auto s = make_successor();
  std::array<Gen, 8> r{};
  for (Gen x = 0; x < 8; ++x) r[inverse(x)] = s[x];
  return r;
}

const std::array<Gen, 8> kSucc = make_successor();
const std::array<Gen, 8> kRot = make_rotation();

std::array<Gen, 8> make_rotation_inverse() {
  std::array<Gen, 8> r{};
  for (Gen x = 0; x < 8; ++x) r[kRot[x]] = x;
  return r;
}
const std::array<Gen, 8> kRotInv = make_rotation_inverse();

// The 16 cyclic readings of the relator and its inverse.
std::vector<std::array<Gen, 8>> cyclic_relators() {
  std::vector<std::array<Gen, 8>> out;
  for (int inv = 0; inv < 2; ++inv)
    for (int k = 0; k < 8; ++k) {
      std::array<Gen, 8> w{};
      for (int i = 0; i < 8; ++i)
        w[i] = inv ? inverse(kRelator[(k + 8 - i) % 8]) : kRelator[(k + i) % 8];
      out.push_back(w);
    }
  return out;
}
const std::vector<std::array<Gen, 8>> kCyclic = cyclic_relators();

// Origin children sit at block offsets 6m with generator rotation^{-m}(a).
int origin_child_index(Gen g) {
  for (int m = 0; m < 8; ++m)
    if (rotation(kA, -m) == g) return m;
  throw std::logic_error("generator outside the origin rotation");
}

CellType block_letter(int offset) { return offset % 6 == 0 ? CellType::A : CellType::B; }
int block_length(CellType t) { return t == CellType::A ? 29 : t == CellType::B ? 35 : 48; }

Pos pos_mod(Pos p, Pos n) {
  p %= n;
  return p < 0 ? p + n : p;
}

}  // namespace

char gen_char(Gen g) {
  if (g < 0 || g >= kGenerators) throw std::out_of_range("generator index");
  return "aAbBcCdD"[g];
}

GroupWord parse_group_word(std::string_view text) {
  GroupWord w;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '1') continue;
    const auto p = std::string_view("aAbBcCdD").find(ch);
    if (p == std::string_view::npos)
      throw std::invalid_argument(std::string("not a generator: '") + ch + "'");
    w.push_back(static_cast<Gen>(p));
  }
  return w;
}

std::string format_group_word(const GroupWord& w) {
  std::string s;
  for (Gen g : w) s += gen_char(g);
  return s;
}

GroupWord invert(const GroupWord& w) {
  GroupWord r(w.rbegin(), w.rend());
  for (Gen& g : r) g = inverse(g);
  return r;
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (Gen g : w) {
    if (!out.empty() && out.back() == inverse(g))
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

GroupWord dehn_reduce(const GroupWord& input) {
  GroupWord w = free_reduce(input);
  for (;;) {
    bool replaced = false;
    for (std::size_t i = 0; i < w.size() && !replaced; ++i) {
      std::size_t best = 0;
      const std::array<Gen, 8>* best_rel = nullptr;
      for (const auto& rel : kCyclic) {
        std::size_t len = 0;
        while (len < 8 && i + len < w.size() && w[i + len] == rel[len]) ++len;
        if (len > best) {
          best = len;
          best_rel = &rel;
        }
      }
      if (best < 5) continue;
      GroupWord complement(best_rel->begin() + static_cast<long>(best), best_rel->end());
      GroupWord next(w.begin(), w.begin() + static_cast<long>(i));
      for (Gen g : invert(complement)) next.push_back(g);
      next.insert(next.end(), w.begin() + static_cast<long>(i + best), w.end());
      w = free_reduce(next);
      replaced = true;
    }
    if (!replaced) return w;
  }
}

bool is_identity(const GroupWord& w) { return dehn_reduce(w).empty(); }

Gen successor(Gen g) { return kSucc.at(g); }

Gen rotation(Gen g, int times) {
  times %= 8;
  if (times < 0) times += 8;
  for (int i = 0; i < times; ++i) g = kRot.at(g);
  return g;
}

std::string pos_to_string(Pos p) {
  if (p == 0) return "0";
  const bool neg = p < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(p + 1)) + 1 : static_cast<unsigned __int128>(p);
  std::string s;
  while (u > 0) {
    s += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) s += '-';
  std::reverse(s.begin(), s.end());
  return s;
}

std::size_t CellRefHash::operator()(const CellRef& c) const noexcept {
  const auto u = static_cast<unsigned __int128>(c.pos);
  std::size_t h = std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(u));
  h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(u >> 64)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<int>{}(c.ring) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string tag_name(int tag) {
  if (tag == kLeft) return "left";
  if (tag == kRight) return "right";
  if (tag == kUp) return "up";
  if (is_down(tag) && tag < kDown1 + 8) return "down" + std::to_string(tag - kDown1 + 1);
  return "none";
}

Gen DirectionSymbol::generator_for(int tag) const {
  for (Gen g = 0; g < kGenerators; ++g)
    if (tag_of[g] == tag) return g;
  return -1;
}

bool DirectionSymbol::valid() const {
  std::vector<int> tags(tag_of.begin(), tag_of.end());
  std::sort(tags.begin(), tags.end());
  std::vector<int> want;
  switch (color) {
    case Color::Black:
      want = {kLeft, kRight, kUp};
      for (int l = 1; l <= 5; ++l) want.push_back(down_tag(l));
      break;
    case Color::White:
      want = {kLeft, kRight};
      for (int l = 1; l <= 6; ++l) want.push_back(down_tag(l));
      break;
    case Color::Orange:
      for (int l = 1; l <= 8; ++l) want.push_back(down_tag(l));
      break;
  }
  return tags == want;
}

DirectionSymbol symbol_from_left(Color color, Gen left) {
  if (color == Color::Orange) return orange_symbol();
  DirectionSymbol s;
  s.color = color;
  s.tag_of[left] = kLeft;
  if (color == Color::Black) {
    s.tag_of[rotation(left, 1)] = kUp;
    s.tag_of[rotation(left, 2)] = kRight;
    for (int l = 1; l <= 5; ++l) s.tag_of[rotation(left, 8 - l)] = down_tag(l);
  } else {
    s.tag_of[rotation(left, 1)] = kRight;
    for (int l = 1; l <= 6; ++l) s.tag_of[rotation(left, 8 - l)] = down_tag(l);
  }
  return s;
}

DirectionSymbol orange_symbol() {
  DirectionSymbol s;
  s.color = Color::Orange;
  for (Gen g = 0; g < kGenerators; ++g) s.tag_of[g] = down_tag(g + 1);
  return s;
}

Gen child_generator(Gen parent_left, int child_index) { return rotation(parent_left, 7 - child_index); }

Gen left_in_block(Gen parent_left, int offset) {
  const int m = offset / 6, r = offset % 6;
  Gen left = kRotInv[inverse(child_generator(parent_left, m))];
  if (r >= 1) left = inverse(rotation(left, 2));
  for (int i = 1; i < r; ++i) left = inverse(rotation(left, 1));
  return left;
}

// ---------------- implicit addressing ----------------

Addressing::Addressing(int max_ring) : max_ring_(max_ring) {
  if (max_ring < 0 || max_ring > 24) throw std::invalid_argument("max_ring must lie in [0, 24]");
  len_.push_back({1, 1});
  for (int k = 1; k <= max_ring; ++k) {
    const auto [a, b] = len_.back();
    len_.push_back({5 * a + 24 * b, 6 * a + 29 * b});
  }
}

Pos Addressing::ring_size(int ring) const {
  if (ring < 0 || ring > max_ring_) throw std::out_of_range("ring outside the addressable range");
  if (ring == 0) return 1;
  return 8 * len_[ring - 1][0] + 40 * len_[ring - 1][1];
}

CellInfo Addressing::info(const CellRef& c) const {
  if (c.pos < 0 || c.pos >= ring_size(c.ring)) throw std::out_of_range("position outside its ring");
  if (c.ring == 0) return {CellType::Orange, -1, 0, 0, 0};
  Pos rem = c.pos, a0 = 0, b0 = 0, parent = 0;
  Gen parent_left = kBinv;
  int block = 48;
  for (int level = 1;; ++level) {
    const int k = c.ring - level;
    int o = 0;
    for (;; ++o) {
      if (o >= block) throw std::logic_error("descent ran past its block");
      const Pos l = len_[k][block_letter(o) == CellType::A ? 0 : 1];
      if (rem < l) break;
      rem -= l;
    }
    const CellType type = block_letter(o);
    const Pos a = a0 + (o + 5) / 6;
    const Pos b = b0 + o - (o + 5) / 6;
    const Gen left = left_in_block(parent_left, o);
    if (level == c.ring) return {type, left, parent, o, 29 * a + 35 * b};
    a0 = 5 * a + 6 * b;
    b0 = 24 * a + 29 * b;
    block = block_length(type);
    parent_left = left;
    parent = a + b;
  }
}

DirectionSymbol Addressing::symbol(const CellRef& c) const {
  const CellInfo i = info(c);
  if (i.type == CellType::Orange) return orange_symbol();
  return symbol_from_left(i.type == CellType::A ? Color::Black : Color::White, i.left);
}

namespace {

template <class InfoFn, class SizeFn>
std::optional<CellRef> positional_step(const CellRef& c, int tag, int max_ring, InfoFn info,
                                       SizeFn size) {
  const CellInfo i = info(c);
  if (i.type == CellType::Orange) {
    if (!is_down(tag) || tag >= kDown1 + 8 || max_ring < 1) return std::nullopt;
    return CellRef{1, 6 * origin_child_index(tag - kDown1)};
  }
  const Pos n = size(c.ring);
  if (tag == kLeft) return CellRef{c.ring, pos_mod(c.pos - 1, n)};
  if (tag == kRight) return CellRef{c.ring, pos_mod(c.pos + 1, n)};
  if (tag == kUp) {
    if (i.type != CellType::A) return std::nullopt;
    return CellRef{c.ring - 1, i.parent};
  }
  const int l = tag - kDown1 + 1;
  if (l > (i.type == CellType::A ? 5 : 6) || c.ring + 1 > max_ring) return std::nullopt;
  return CellRef{c.ring + 1, i.block_start + 6 * (l - 1)};
}

}  // namespace

std::optional<CellRef> Addressing::step(const CellRef& c, int tag) const {
  return positional_step(
      c, tag, max_ring_, [this](const CellRef& x) { return info(x); },
      [this](int r) { return ring_size(r); });
}

std::optional<CellRef> Addressing::apply(const CellRef& c, Gen g) const {
  return step(c, symbol(c).tag_of.at(g));
}

std::optional<CellRef> Addressing::walk(CellRef c, const GroupWord& w) const {
  for (Gen g : w) {
    auto n = apply(c, g);
    if (!n) return std::nullopt;
    c = *n;
  }
  return c;
}

// ---------------- explicit ball ----------------

std::string Ring::type_word() const {
  std::string s;
  for (CellType t : type) s += t == CellType::A ? 'a' : t == CellType::B ? 'b' : 'o';
  return s;
}

std::size_t Ring::count(CellType t) const { return static_cast<std::size_t>(std::count(type.begin(), type.end(), t)); }

std::size_t CayleyBallPatch::cell_count() const {
  std::size_t n = 0;
  for (const auto& r : rings) n += r.size();
  return n;
}

CayleyBallPatch grow_ball(int n) {
  if (n < 0) throw std::invalid_argument("ball radius must be non-negative");
  if (n > 5) throw std::invalid_argument("explicit balls are limited to radius 5");
  CayleyBallPatch ball;
  Ring origin;
  origin.type = {CellType::Orange};
  origin.left = {-1};
  origin.parent = {0};
  origin.block_start = {0};
  ball.rings.push_back(std::move(origin));
  for (int r = 1; r <= n; ++r) {
    Ring& prev = ball.rings.back();
    Ring next;
    for (std::size_t q = 0; q < prev.size(); ++q) {
      prev.block_start[q] = static_cast<std::int64_t>(next.size());
      const Gen parent_left = prev.type[q] == CellType::Orange ? kBinv : prev.left[q];
      const int len = block_length(prev.type[q]);
      for (int o = 0; o < len; ++o) {
        next.type.push_back(block_letter(o));
        next.left.push_back(left_in_block(parent_left, o));
        next.parent.push_back(static_cast<std::int64_t>(q));
        next.block_start.push_back(0);
      }
    }
    ball.rings.push_back(std::move(next));
  }
  // Outer ring children lie beyond the ball.
  for (auto& b : ball.rings.back().block_start) b = -1;
  return ball;
}

DirectionSymbol CayleyBallPatch::symbol(const CellRef& c) const {
  const Ring& r = rings.at(c.ring);
  const auto i = static_cast<std::size_t>(c.pos);
  if (r.type.at(i) == CellType::Orange) return orange_symbol();
  return symbol_from_left(r.type[i] == CellType::A ? Color::Black : Color::White, r.left[i]);
}

std::optional<CellRef> CayleyBallPatch::step(const CellRef& c, int tag) const {
  return positional_step(
      c, tag, radius(),
      [this](const CellRef& x) {
        const Ring& r = rings.at(x.ring);
        const auto i = static_cast<std::size_t>(x.pos);
        return CellInfo{r.type.at(i), r.left[i], r.parent[i], 0, r.block_start[i]};
      },
      [this](int r) { return static_cast<Pos>(rings.at(r).size()); });
}

std::optional<CellRef> CayleyBallPatch::apply(const CellRef& c, Gen g) const {
  return step(c, symbol(c).tag_of.at(g));
}

// ---------------- direction patches ----------------

const DirectionSymbol& DirectionPatch::at(const CellRef& c) const {
  auto it = cells.find(c);
  if (it == cells.end())
    throw OutsidePatch("cell (" + std::to_string(c.ring) + ", " + pos_to_string(c.pos) + ") is outside the patch");
  return it->second;
}

std::vector<CellRef> DirectionPatch::sorted_cells() const {
  std::vector<CellRef> v;
  v.reserve(cells.size());
  for (const auto& [c, s] : cells) v.push_back(c);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<CellRef> cycle_neighbours(const Addressing& addr, const CellRef& c) {
  std::vector<CellRef> out;
  for (int k = 0; k < 8; ++k) {
    CellRef v = c;
    for (int i = 0; i < 7; ++i) {
      auto n = addr.apply(v, kRelator[(k + i) % 8]);
      if (!n) break;
      v = *n;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DirectionPatch build_direction_patch(const Addressing& addr, int radius, bool keep_orange,
                                     int anchor_ring) {
  if (radius < 0) throw std::invalid_argument("patch radius must be non-negative");
  DirectionPatch p;
  p.orange = keep_orange;
  if (keep_orange) {
    if (radius > 4) throw std::invalid_argument("orange patches are limited to radius 4");
    if (radius > addr.max_ring()) throw std::invalid_argument("radius exceeds the addressable rings");
    p.anchor = {0, 0};
    for (int r = 0; r <= radius; ++r)
      for (Pos i = 0; i < addr.ring_size(r); ++i) p.cells.emplace(CellRef{r, i}, addr.symbol({r, i}));
    return p;
  }
  if (anchor_ring <= radius) throw std::invalid_argument("anchor ring must exceed the radius");
  if (anchor_ring + radius + 1 > addr.max_ring())
    throw std::invalid_argument("patch reaches beyond the addressable rings");
  p.anchor = {anchor_ring, 0};
  std::unordered_map<CellRef, int, CellRefHash> dist{{p.anchor, 0}};
  std::deque<CellRef> queue{p.anchor};
  while (!queue.empty()) {
    const CellRef c = queue.front();
    queue.pop_front();
    const int d = dist[c];
    if (d == radius) continue;
    for (const CellRef& n : cycle_neighbours(addr, c))
      if (dist.emplace(n, d + 1).second) queue.push_back(n);
  }
  for (const auto& [c, d] : dist) p.cells.emplace(c, addr.symbol(c));
  return p;
}

std::optional<CellRef> nav(const DirectionPatch& patch, const Addressing& addr, const CellRef& g,
                           int tag) {
  const DirectionSymbol& s = patch.at(g);
  const Gen gen = s.generator_for(tag);
  if (gen < 0) return std::nullopt;
  auto n = addr.apply(g, gen);
  if (!n || !patch.contains(*n)) return std::nullopt;
  return n;
}

namespace {

CellRef nav_or_throw(const DirectionPatch& patch, const Addressing& addr, const CellRef& g, int tag) {
  auto n = nav(patch, addr, g, tag);
  if (!n) throw OutsidePatch("move " + tag_name(tag) + " leaves the patch");
  return *n;
}

}  // namespace

CellRef f_coords(const DirectionPatch& patch, const Addressing& addr, long i, long j) {
  CellRef g = patch.anchor;
  for (long k = 0; k < std::abs(i); ++k) g = nav_or_throw(patch, addr, g, i > 0 ? down_tag(1) : kUp);
  if (j == 0) return g;
  if (g.ring == 0) throw OutsidePatch("the origin has no ring neighbours");
  // Right moves only shift the position inside a ring.
  const CellRef target{g.ring, pos_mod(g.pos + j, addr.ring_size(g.ring))};
  if (!patch.contains(target)) throw OutsidePatch("f target lies outside the patch");
  return target;
}

std::pair<long, long> f_inverse(const DirectionPatch& patch, const Addressing& addr,
                                const CellRef& g) {
  patch.at(g);
  const long i = g.ring - patch.anchor.ring;
  if (g.ring == 0) return {i, 0};
  // Down_1 and up chains from the anchor stay at position 0 of every ring.
  const Pos n = addr.ring_size(g.ring);
  Pos j = pos_mod(g.pos, n);
  if (j > n / 2) j -= n;
  return {i, static_cast<long>(j)};
}

bool matches_cycle_template(const std::array<DirectionSymbol, 8>& v, int rot, int which) {
  std::array<Gen, 9> g{};  // g[i]: edge from v[i-1] to v[i mod 8]
  for (int i = 1; i <= 8; ++i) g[i] = kRelator[(rot + i - 1) % 8];
  auto tag = [&](int vi, Gen x) { return v[vi].tag_of[x]; };
  auto black = [&](int vi) { return v[vi].color == Color::Black; };
  auto white = [&](int vi) { return v[vi].color == Color::White; };

  if (!is_down(tag(0, g[1]))) return false;
  if (!black(1) || tag(1, inverse(g[1])) != kUp || tag(1, g[2]) != kRight) return false;
  const int last_white = which == 1 ? 6 : 5;
  for (int i = 2; i <= last_white; ++i)
    if (!white(i) || tag(i, inverse(g[i])) != kLeft || tag(i, g[i + 1]) != kRight) return false;
  if (which == 1) {
    return black(7) && tag(7, inverse(g[7])) == kLeft && tag(7, g[8]) == kUp &&
           is_down(tag(0, inverse(g[8])));
  }
  return black(6) && tag(6, inverse(g[6])) == kLeft && tag(6, g[7]) == kUp &&
         is_down(tag(7, inverse(g[7]))) && tag(7, g[8]) == kLeft && tag(0, inverse(g[8])) == kRight;
}

ScanReport scan_f1(const DirectionPatch& patch, const Addressing& addr) {
  std::map<std::array<CellRef, 8>, bool> faces;
  for (const auto& [c, sym] : patch.cells) {
    for (int rot = 0; rot < 8; ++rot) {
      std::array<CellRef, 8> verts{};
      std::array<DirectionSymbol, 8> syms{};
      CellRef v = c;
      bool inside = true;
      for (int i = 0; i < 8 && inside; ++i) {
        verts[i] = v;
        syms[i] = patch.at(v);
        auto n = addr.apply(v, kRelator[(rot + i) % 8]);
        inside = n && patch.contains(*n);
        if (inside) v = *n;
      }
      if (!inside) continue;
      if (v != c) throw std::logic_error("relator walk does not close");
      const bool ok = matches_cycle_template(syms, rot, 1) || matches_cycle_template(syms, rot, 2);
      auto key = verts;
      std::rotate(key.begin(), std::min_element(key.begin(), key.end()), key.end());
      faces[key] = faces[key] || ok;
    }
  }
  ScanReport rep;
  rep.checked = faces.size();
  for (const auto& [k, ok] : faces) rep.violations += ok ? 0 : 1;
  return rep;
}

ScanReport scan_f2(const DirectionPatch& patch, const Addressing& addr) {
  ScanReport rep;
  for (const auto& [c, sym] : patch.cells) {
    for (Gen h = 0; h < kGenerators; ++h) {
      auto n = addr.apply(c, h);
      if (!n || !patch.contains(*n)) continue;
      ++rep.checked;
      const int here = sym.tag_of[h];
      const int there = patch.at(*n).tag_of[inverse(h)];
      bool ok;
      if (here == kLeft) ok = there == kRight;
      else if (here == kRight) ok = there == kLeft;
      else if (here == kUp) ok = is_down(there);
      else ok = there == kUp;
      if (!ok) ++rep.violations;
    }
  }
  return rep;
}

std::optional<BalanceResult> check_cycle_balance(const Addressing& addr, const CellRef& start,
                                                 const GroupWord& walk) {
  if (!is_identity(walk)) throw NotClosed("walk '" + format_group_word(walk) + "' is not closed");
  BalanceResult res;
  CellRef cur = start;
  for (Gen g : walk) {
    const int tag = addr.symbol(cur).tag_of[g];
    if (tag == kUp) ++res.up;
    if (is_down(tag)) ++res.down;
    auto n = addr.step(cur, tag);
    if (!n) return std::nullopt;
    cur = *n;
  }
  if (cur != start) throw std::logic_error("trivial word does not return to its start");
  return res;
}

// ---------------- transport ----------------

namespace {

CellRef apply_move(const DirectionPatch& patch, const Addressing& addr, CellRef g, int ell) {
  if (ell < 0) return nav_or_throw(patch, addr, g, kRight);
  g = nav_or_throw(patch, addr, g, down_tag(1));
  for (int k = 0; k < ell; ++k) g = nav_or_throw(patch, addr, g, kRight);
  return g;
}

}  // namespace

TransportResult transport_forbidden(const DirectionPatch& patch, const Addressing& addr,
                                    const std::vector<OrbitPattern>& patterns) {
  TransportResult out;
  for (const auto& p : patterns) {
    if (p.colors.size() != p.vertices.size())
      throw std::invalid_argument("pattern needs one color per vertex");
    CayleyPattern cp;
    cp.colors = p.colors;
    try {
      for (auto [i, j] : p.vertices) cp.cells.push_back(f_coords(patch, addr, i, j));
      for (const auto& e : p.edges) {
        if (apply_move(patch, addr, cp.cells.at(e.from), e.label) != cp.cells.at(e.to))
          throw std::invalid_argument("pattern edge does not follow the orbit graph");
        cp.moves.push_back({e.from, e.to, e.label});
      }
    } catch (const OutsidePatch&) {
      ++out.skipped;
      continue;
    }
    out.patterns.push_back(std::move(cp));
  }
  return out;
}

OrbitPattern transport_back(const DirectionPatch& patch, const Addressing& addr,
                            const CayleyPattern& p) {
  OrbitPattern out;
  out.colors = p.colors;
  for (const auto& c : p.cells) out.vertices.push_back(f_inverse(patch, addr, c));
  for (const auto& m : p.moves) {
    if (apply_move(patch, addr, p.cells.at(m.from), m.ell) != p.cells.at(m.to))
      throw std::invalid_argument("Cayley move does not join its cells");
    out.edges.push_back({m.from, m.to, m.ell});
  }
  return out;
}

std::pair<long, long> orbit_children(const DirectionPatch& patch, const Addressing& addr, long i,
                                     long j) {
  const CellRef g = f_coords(patch, addr, i, j);
  const CellInfo info = addr.info(g);
  const CellRef first = nav_or_throw(patch, addr, g, down_tag(1));
  const long start = f_inverse(patch, addr, first).second;
  return {start, start + block_length(info.type)};
}

}  // namespace domino::surface
