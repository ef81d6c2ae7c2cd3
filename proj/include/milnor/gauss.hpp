#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "milnor/words.hpp"

namespace milnor {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Role : std::uint8_t { Over, Under };

/// One crossing endpoint on a component: the crossing id, whether this strand
/// passes over or under, and the crossing sign (stored on both endpoints).
struct Event {
  int crossing = 0;
  Role role = Role::Over;
  int sign = 1;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A based welded link diagram in Gauss-code form: per component, the ordered
/// list of crossing endpoints met when travelling from the base point along
/// the orientation. Virtual crossings are not represented.
class BasedDiagram {
 public:
  explicit BasedDiagram(std::vector<std::vector<Event>> comps);

  static BasedDiagram trivial(int components);

  int components() const { return static_cast<int>(comps_.size()); }
  /// Component events; comp is 1-based.
  const std::vector<Event>& component(int comp) const { return comps_.at(comp - 1); }
  const std::vector<std::vector<Event>>& all() const { return comps_; }

  int crossing_count() const;
  int max_crossing_id() const;

  friend bool operator==(const BasedDiagram&, const BasedDiagram&) = default;

 private:
  std::vector<std::vector<Event>> comps_;
};

/// Parse the `.gauss` text format. Throws ParseError on malformed input.
BasedDiagram parse_gauss_code(const std::string& text);

/// Canonical serialization: crossing ids renumbered by first appearance.
std::string serialize(const BasedDiagram& d);

inline std::string normalize_gauss(const std::string& text) {
  return serialize(parse_gauss_code(text));
}

/// True iff the two diagrams have identical normalized codes.
bool same_normalized(const BasedDiagram& a, const BasedDiagram& b);

/// Arc decomposition of a based diagram. Arcs of component i are delimited by
/// the base point and the under events; arc a_{i0} leaves the base point.
/// For the j-th under event (j = 1..r_i), passes[i-1][j-1] records the arc
/// carrying the matching over event and the crossing sign.
struct ArcTable {
  struct UnderPass {
    ArcRef over;
    int sign = 1;
  };

  std::vector<std::vector<UnderPass>> passes;
  std::vector<int> writhe;  // w_i = sum of signs of self-passes

  int components() const { return static_cast<int>(passes.size()); }
  int unders(int comp) const { return static_cast<int>(passes.at(comp - 1).size()); }
  int arc_count(int comp) const { return unders(comp) + 1; }
  const UnderPass& pass(int comp, int j) const { return passes.at(comp - 1).at(j - 1); }
};

ArcTable arc_table(const BasedDiagram& d);

enum class MoveKind : std::uint8_t {
  R1Insert,
  R1Delete,
  R2Insert,
  R2Delete,
  R3,
  OC,
  Rebase,
  CrossingChange,
};

/// A located move. Components are 1-based; positions index into the event
/// list (for inserts, a position between events, 0..size).
struct MoveSpec {
  MoveKind kind = MoveKind::R1Insert;
  int comp = 1, pos = 0;    // primary site (R3: start of the top over-over pair)
  int comp2 = 1, pos2 = 0;  // secondary site (R2 under pair / R3 middle pair)
  int comp3 = 1, pos3 = 0;  // R3 bottom pair
  int sign = 1;             // R1/R2 inserts: sign of the (first) new crossing
  bool over_first = true;   // R1Insert: O before U
  bool under_reversed = false;  // R2Insert: under pair in reversed order
  int crossing = 0;         // CrossingChange
  int shift = 0;            // Rebase

  std::string str() const;
};

/// Apply a move, returning a new valid diagram. Throws MoveError if the
/// move's applicability predicate fails at the given location.
BasedDiagram apply_move(const BasedDiagram& d, const MoveSpec& m);

struct MoveTrace {
  BasedDiagram result;
  std::vector<MoveSpec> moves;
};

/// Apply `count` randomly chosen applicable moves drawn from the sound
/// invariance set {R1, R2, R3, OC}. Deterministic for a fixed seed.
MoveTrace random_moves(const BasedDiagram& d, int count, std::uint64_t seed);

/// Replay a recorded trace from the given start diagram.
BasedDiagram replay(const BasedDiagram& d, const std::vector<MoveSpec>& moves);

/// Uniformly random Gauss code: `crossings` crossings scattered over
/// `components` components with random roles, positions and signs.
BasedDiagram random_diagram(int components, int crossings, std::uint64_t seed);

/// Base point relocation past `shift` events (a convenience wrapper for the
/// Rebase move kind).
BasedDiagram rebase(const BasedDiagram& d, int comp, int shift);

/// Deterministic bounded RNG helpers shared by the fuzzing code paths.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform value in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return (next() & 1) != 0; }
};

}  // namespace milnor
