#pragma once

#include <string>
#include <vector>

#include "milnor/chen.hpp"
#include "milnor/gauss.hpp"
#include "milnor/series.hpp"
#include "milnor/words.hpp"

namespace milnor {

/// Reference to a region a_{ij}: component (1-based) and region index
/// (0-based within the component; the based region need not be index 0).
struct RegionRef {
  int comp = 0;
  int region = 0;

  friend auto operator<=>(const RegionRef&, const RegionRef&) = default;
};

using RegionWord = BasicWord<RegionRef>;

/// One crossing of a path or loop with an arc of D: sign +1 walks
/// front -> back, sign -1 walks back -> front.
struct PathStep {
  int arc = 0;  // arc id
  int sign = 1;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

using Path = std::vector<PathStep>;

/// An arc of the 1-dimensional diagram D on a surface component, encoding
/// the relation (label) (front) (label)^-1 (back)^-1 between region
/// generators; front and back lie on the arc's component.
struct CutArc {
  int id = 0;
  RegionRef label;
  RegionRef front;
  RegionRef back;
};

struct CutComponent {
  int genus = 0;
  std::vector<std::string> region_names;
  int base = 0;                    // region index of the based region
  std::vector<Path> loops;         // exactly 2*genus generator loops
  std::vector<Path> paths;         // per region; paths[base] is empty
};

/// A combinatorial 2-dimensional cut-diagram. Construction validates path
/// and loop consistency by walking every stored word.
class CutDiagram {
 public:
  CutDiagram(std::vector<CutComponent> comps, std::vector<CutArc> arcs);

  int components() const { return static_cast<int>(comps_.size()); }
  const CutComponent& comp(int i) const { return comps_.at(i - 1); }
  const std::vector<CutArc>& arcs() const { return arcs_; }
  const CutArc& arc(int id) const;
  int region_count(int comp) const { return static_cast<int>(comps_.at(comp - 1).region_names.size()); }

  /// Walk a path from `start`; throws ParseError naming the first failing
  /// step if a crossing does not match the current region.
  RegionRef walk(RegionRef start, const Path& path, const std::string& what) const;

 private:
  std::vector<CutComponent> comps_;
  std::vector<CutArc> arcs_;
};

/// Parse the `.cutd` JSON document format.
CutDiagram parse_cut(const std::string& json_text);

/// w(l) = a_{i0}^{-w_i} u_1^{e(1)} u_2^{e(2)} ... over the region alphabet,
/// where w_i sums the signs of the loop's crossings whose label lies on
/// component i. The loop must start and end at the based region.
RegionWord loop_word(const CutDiagram& c, int comp, const Path& loop);
RegionWord loop_word(const CutDiagram& c, int comp, int loop_index);

/// Chen map of the cut-diagram, evaluated in truncated series per region.
class CutColoring {
 public:
  CutColoring(int vars, int order, std::vector<std::vector<TruncSeries>> regions)
      : vars_(vars), order_(order), regions_(std::move(regions)) {}

  int vars() const { return vars_; }
  int order() const { return order_; }
  const TruncSeries& at(int comp, int region) const { return regions_.at(comp - 1).at(region); }
  const TruncSeries& at(RegionRef r) const { return at(r.comp, r.region); }

 private:
  int vars_;
  int order_;
  std::vector<std::vector<TruncSeries>> regions_;
};

CutColoring chen_series_cut(const CutDiagram& c, int order);

TruncSeries series_of_word(const CutColoring& t, const RegionWord& w);

/// Coefficient of X_{i1}...X_{is} in the series of eta_q(w(l_{comp,j})),
/// computed at order q = |I| + 1.
mpz_class mu_loop(const CutDiagram& c, const Sequence& I, int comp, int loop_index);

struct NuRecord {
  Sequence I;
  mpz_class m;
  mpz_class delta;
  mpz_class nu;
};

/// Milnor nu invariant of a cut-diagram: m = gcd of loop coefficients over
/// the terminal component's longitude system, Delta the subsequence-cyclic
/// gcd of shorter m values, nu = gcd(m, Delta).
NuRecord nu(const CutDiagram& c, const Sequence& I);

struct NuTable {
  int n = 0;
  int max_len = 0;
  std::map<Sequence, NuRecord> records;
};

NuTable nu_all(const CutDiagram& c, int max_len);

/// Tube fixture: every component of d becomes a torus whose regions are the
/// arcs of d (the ingoing arc merges with the based region), every crossing
/// a meridian circle of D labeled by its over arc's region. The
/// longitude-direction loop word reproduces lambda_i.
CutDiagram tube_from_diagram(const BasedDiagram& d);

/// Re-encode with a different based region on one component: paths are
/// recomputed from the region adjacency and loops conjugated by a connecting
/// path. (Delta, nu) tables are unchanged by construction of the theory.
CutDiagram rebase_cut(const CutDiagram& c, int comp, int new_base_region);

}  // namespace milnor
