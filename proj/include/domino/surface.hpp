#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace domino::surface {

// Generators a, a^-1, b, b^-1, c, c^-1, d, d^-1 as 0..7; inverse flips the low bit.
using Gen = int;
constexpr int kGenerators = 8;
inline constexpr Gen inverse(Gen g) { return g ^ 1; }

using GroupWord = std::vector<Gen>;

// [a,b][c,d] = a b a^-1 b^-1 c d c^-1 d^-1
extern const std::array<Gen, 8> kRelator;

char gen_char(Gen g);  // a A b B c C d D
GroupWord parse_group_word(std::string_view text);
std::string format_group_word(const GroupWord& w);
GroupWord invert(const GroupWord& w);

GroupWord free_reduce(const GroupWord& w);
GroupWord dehn_reduce(const GroupWord& w);
bool is_identity(const GroupWord& w);

// Successor of a letter inside the cyclic relator, and the vertex rotation
// rotation(x^-1) = successor(x) shared by every vertex of the Cayley graph.
Gen successor(Gen g);
Gen rotation(Gen g, int times = 1);

// ----- ball geometry -----

using Pos = __int128;
std::string pos_to_string(Pos p);

enum class CellType : std::uint8_t { Orange, A, B };

struct CellRef {
  int ring = 0;
  Pos pos = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

struct CellRefHash {
  std::size_t operator()(const CellRef& c) const noexcept;
};

// Direction tags: left, right, up, then down_1 .. down_8.
enum Tag : int { kLeft = 0, kRight = 1, kUp = 2, kDown1 = 3 };
inline constexpr int down_tag(int l) { return kDown1 + l - 1; }
inline constexpr bool is_down(int tag) { return tag >= kDown1; }
std::string tag_name(int tag);

enum class Color : std::uint8_t { Black, White, Orange };

struct DirectionSymbol {
  Color color = Color::Black;
  std::array<int, kGenerators> tag_of{};  // generator -> tag

  Gen generator_for(int tag) const;  // -1 when the tag is absent
  bool valid() const;
  friend bool operator==(const DirectionSymbol&, const DirectionSymbol&) = default;
};

DirectionSymbol symbol_from_left(Color color, Gen left);
DirectionSymbol orange_symbol();

struct CellInfo {
  CellType type = CellType::Orange;
  Gen left = -1;    // generator of the left direction, -1 for the origin
  Pos parent = 0;   // position of the parent in the previous ring
  int offset = 0;   // index inside the parent's block of children
  Pos block_start = 0;  // position of the first child in the next ring
};

// Positional addressing of the ball: a cell is (ring, position) and everything
// else is recomputed from the substitution structure of the rings.
class Addressing {
 public:
  explicit Addressing(int max_ring = 24);

  int max_ring() const { return max_ring_; }
  Pos ring_size(int ring) const;
  CellInfo info(const CellRef& c) const;
  DirectionSymbol symbol(const CellRef& c) const;
  // Neighbour along a direction tag; nullopt outside rings [0, max_ring] or when the tag is absent.
  std::optional<CellRef> step(const CellRef& c, int tag) const;
  std::optional<CellRef> apply(const CellRef& c, Gen g) const;
  std::optional<CellRef> walk(CellRef c, const GroupWord& w) const;

 private:
  int max_ring_;
  std::vector<std::array<Pos, 2>> len_;  // |s^k(a)|, |s^k(b)|
};

Gen child_generator(Gen parent_left, int child_index);
Gen left_in_block(Gen parent_left, int offset);

struct Ring {
  std::vector<CellType> type;
  std::vector<Gen> left;
  std::vector<std::int64_t> parent;
  std::vector<std::int64_t> block_start;

  std::size_t size() const { return type.size(); }
  std::string type_word() const;
  std::size_t count(CellType t) const;
};

struct CayleyBallPatch {
  std::vector<Ring> rings;

  int radius() const { return static_cast<int>(rings.size()) - 1; }
  std::size_t cell_count() const;
  DirectionSymbol symbol(const CellRef& c) const;
  std::optional<CellRef> step(const CellRef& c, int tag) const;
  std::optional<CellRef> apply(const CellRef& c, Gen g) const;
};

CayleyBallPatch grow_ball(int n);

struct DirectionPatch {
  std::unordered_map<CellRef, DirectionSymbol, CellRefHash> cells;
  CellRef anchor;   // plays the role of the identity for f
  bool orange = false;

  bool contains(const CellRef& c) const { return cells.contains(c); }
  const DirectionSymbol& at(const CellRef& c) const;
  std::vector<CellRef> sorted_cells() const;
};

class OutsidePatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// keep_orange: rings 0..radius around the origin. Otherwise the cells within
// elementary-cycle distance `radius` of the cell (anchor_ring, 0), anchor_ring > radius.
DirectionPatch build_direction_patch(const Addressing& addr, int radius, bool keep_orange,
                                     int anchor_ring = 0);

// Cells reachable through one elementary cycle.
std::vector<CellRef> cycle_neighbours(const Addressing& addr, const CellRef& c);

std::optional<CellRef> nav(const DirectionPatch& patch, const Addressing& addr,
                           const CellRef& g, int tag);
CellRef f_coords(const DirectionPatch& patch, const Addressing& addr, long i, long j);
std::pair<long, long> f_inverse(const DirectionPatch& patch, const Addressing& addr,
                                const CellRef& g);

struct ScanReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
};

// Elementary cycles fully inside the patch that match neither cycle template.
ScanReport scan_f1(const DirectionPatch& patch, const Addressing& addr);
// Edges inside the patch whose two ends disagree on their directions.
ScanReport scan_f2(const DirectionPatch& patch, const Addressing& addr);

// Does the cycle starting at v0 and reading the relator from index `rot` match a template?
bool matches_cycle_template(const std::array<DirectionSymbol, 8>& cells, int rot, int which);

struct BalanceResult {
  std::size_t up = 0;
  std::size_t down = 0;
  bool balanced() const { return up == down; }
};

class NotClosed : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Walks the word from `start`; nullopt if the walk leaves the addressable rings.
std::optional<BalanceResult> check_cycle_balance(const Addressing& addr, const CellRef& start,
                                                 const GroupWord& walk);

// ----- pattern transport between the orbit graph and the Cayley graph -----

struct OrbitPatternEdge {
  std::size_t from = 0, to = 0;
  int label = -1;  // -1 next, otherwise child index
  friend bool operator==(const OrbitPatternEdge&, const OrbitPatternEdge&) = default;
};

struct OrbitPattern {
  std::vector<std::pair<long, long>> vertices;  // (i, j) in f coordinates
  std::vector<OrbitPatternEdge> edges;
  std::vector<int> colors;
  friend bool operator==(const OrbitPattern&, const OrbitPattern&) = default;
};

// Move from one Cayley vertex to another: right (next) or right^ell after down_1.
struct CayleyMove {
  std::size_t from = 0, to = 0;
  int ell = -1;  // -1 for a single right move
};

struct CayleyPattern {
  std::vector<CellRef> cells;
  std::vector<CayleyMove> moves;
  std::vector<int> colors;
};

struct TransportResult {
  std::vector<CayleyPattern> patterns;
  std::size_t skipped = 0;
};

TransportResult transport_forbidden(const DirectionPatch& patch, const Addressing& addr,
                                    const std::vector<OrbitPattern>& patterns);

// Inverse direction; throws OutsidePatch when a cell is missing.
OrbitPattern transport_back(const DirectionPatch& patch, const Addressing& addr,
                            const CayleyPattern& p);

// Child interval of (i, j) in the orbit graph read off the patch.
std::pair<long, long> orbit_children(const DirectionPatch& patch, const Addressing& addr, long i,
                                     long j);

}  // namespace domino::surface
