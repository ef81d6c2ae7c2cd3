#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "milnor/gauss.hpp"
#include "milnor/words.hpp"

namespace milnor {

/// Exact rational position on a component; positions define the circular
/// order of arrow ends starting from the base point.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n, long long d);
  static Rat of(long long n) { return Rat(n, 1); }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rat& a, const Rat& b);

  std::string str() const;
};

/// An arrow end: component (1-based) plus position.
struct End {
  int comp = 1;
  Rat pos;

  friend bool operator==(const End&, const End&) = default;
};

/// A W-arrow: surgery along it creates one classical crossing whose over
/// strand carries the tail. Odd twist parity yields a negative crossing.
struct Arrow {
  End tail;
  End head;
  int twists = 0;  // reduced mod 2 on construction
};

/// A crossing-free based diagram together with W-arrows placed on it.
class ArrowPresentation {
 public:
  ArrowPresentation(int components, std::vector<Arrow> arrows);

  int components() const { return components_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

 private:
  int components_;
  std::vector<Arrow> arrows_;
};

/// One arrow per classical crossing: tail at the over event, head at the
/// under event, one twist iff the crossing is negative.
ArrowPresentation from_diagram(const BasedDiagram& d);

/// Surgery: every arrow becomes a classical crossing, events ordered by
/// position along each component. Throws MoveError on coincident positions.
BasedDiagram surgery(const ArrowPresentation& p);

/// A W-tree: oriented uni-trivalent tree with a unique head, tails placed on
/// diagram components, and twist counts on edges (only parity matters).
/// Nodes form an arena; a node is a leaf (tail end) iff left < 0.
struct WTree {
  struct Node {
    int twists = 0;
    int left = -1;
    int right = -1;
    End tail;
  };

  End head;
  int head_twists = 0;
  std::vector<Node> nodes;
  int root = 0;

  int degree() const;

  /// Caterpillar tree [t1,[t2,[...,tk]]] with all edge twists zero.
  static WTree caterpillar(const std::vector<End>& tails, End head);
};

/// Expand a W-tree into W-arrows realizing the commutator insertion word at
/// the head. Arrow ends are packed into a half-open window of width `window`
/// after each original end position. The arrow count for a caterpillar tree
/// of degree k satisfies N(1) = 1, N(k) = 2 N(k-1) + 2.
std::vector<Arrow> expand_tree(const WTree& t, const Rat& window = Rat(1, 4096));

/// from_diagram(d) plus the expansion of t, surgered back to a diagram.
BasedDiagram tree_surgery(const BasedDiagram& d, const WTree& t);

struct NotAscendingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-component label words l_i = u_{i1}^{e1} ... of an ascending
/// presentation (all tails before all heads on every component); the letter
/// for an arrow is the meridian of its tail component, inverted iff the
/// arrow carries a twist. Throws NotAscendingError otherwise.
std::vector<Word> l_words(const ArrowPresentation& p);

/// Uniformly random caterpillar W_k-tree placed on d. With self_only all
/// ends land on one component. Deterministic for a fixed seed.
WTree random_wk_tree(const BasedDiagram& d, int degree, bool self_only, std::uint64_t seed);

/// `.arrows` text format.
ArrowPresentation parse_arrows(const std::string& text);
std::string serialize(const ArrowPresentation& p);

}  // namespace milnor
