#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "milnor/gauss.hpp"
#include "milnor/series.hpp"
#include "milnor/words.hpp"

namespace milnor {

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Word-engine size guard (letters). Reads MILNOR_GUARD once; default 10^6.
std::size_t word_guard();

using Sequence = std::vector<int>;

/// Meridian a_{i0} and longitude word lambda_i for each component, assembled
/// over the arc alphabet as a_{i0}^{-w_i} u_{i1}^{e(i1)} ... u_{ir_i}^{e(ir_i)}
/// and free-reduced.
struct PeripheralData {
  std::vector<ArcWord> longitude;  // index k-1

  const ArcWord& of(int comp) const { return longitude.at(comp - 1); }
};

PeripheralData longitudes(const BasedDiagram& d);
ArcWord longitude_word(const ArcTable& t, int comp);

/// The (F/Gamma_q F)-coloring evaluated in truncated series: arc a_{ij} maps
/// to the Magnus expansion of eta_q(a_{ij}), truncated at degree `order`.
class ColoringTable {
 public:
  ColoringTable(int vars, int order, std::vector<std::vector<TruncSeries>> arcs)
      : vars_(vars), order_(order), arcs_(std::move(arcs)) {}

  int vars() const { return vars_; }
  int order() const { return order_; }
  const TruncSeries& at(int comp, int arc) const { return arcs_.at(comp - 1).at(arc); }
  const TruncSeries& at(ArcRef a) const { return at(a.comp, a.idx); }
  int arc_count(int comp) const { return static_cast<int>(arcs_.at(comp - 1).size()); }

 private:
  int vars_;
  int order_;
  std::vector<std::vector<TruncSeries>> arcs_;
};

/// Series engine: computes the level-q coloring without materializing words.
ColoringTable chen_series(const BasedDiagram& d, int order);

/// Evaluate the series of an arc word against a coloring table.
TruncSeries series_of_word(const ColoringTable& t, const ArcWord& w);

/// Word engine: the literal free-group word eta_q(arc). Throws GuardError
/// when the materialized words would exceed `guard` letters.
Word chen_word(const BasedDiagram& d, int order, ArcRef arc, std::size_t guard = word_guard());

struct WordEngineStats {
  std::size_t peak_letters = 0;
};

/// eta_q applied to the longitude of `comp`, via the word engine.
Word eta_longitude_word(const BasedDiagram& d, int order, int comp,
                        std::size_t guard = word_guard(), WordEngineStats* stats = nullptr);

/// Milnor mu(I) at a chosen computation order q (requires q >= |I|).
mpz_class mu_at_order(const BasedDiagram& d, const Sequence& I, int q);

/// Milnor mu(I) at the default order q = |I| + 1; mu of a length-1 sequence
/// is 0 by definition.
mpz_class mu(const BasedDiagram& d, const Sequence& I);

/// All mu(I) for 1 <= |I| <= max_len, computed from a single order-(max_len+1)
/// coloring table (values are independent of the computation order).
struct MuTable {
  int n = 0;
  int max_len = 0;
  std::map<Sequence, mpz_class> values;

  const mpz_class& at(const Sequence& I) const;
};

MuTable mu_all(const BasedDiagram& d, int max_len);

struct InvariantRecord {
  Sequence I;
  mpz_class mu;
  mpz_class delta;
  mpz_class mubar;  // least nonnegative residue when delta > 0, else mu
  int r = 0;        // max index multiplicity in I
};

InvariantRecord delta_and_mubar(const BasedDiagram& d, const Sequence& I);
InvariantRecord delta_and_mubar(const MuTable& table, const Sequence& I);

/// Fingerprint of the automorphism phi_q of F/Gamma_q F: entry k is the
/// series of the class of a_{k r_k}, truncated at degree q-1 (the resolution
/// of the quotient).
std::vector<TruncSeries> phi_q(const BasedDiagram& d, int q);

/// Presentation of the q-th nilpotent quotient of the link group:
/// generators a1..an, longitude relators [a_i, eta_q(lambda_i)] (trivial ones
/// omitted) and the lower-central-series term.
std::string nilpotent_presentation(const BasedDiagram& d, int q,
                                   std::size_t guard = word_guard());

/// Sequence helpers shared by the engine, the CLI and the test suites.
int max_multiplicity(const Sequence& I);
std::vector<Sequence> all_sequences(int n, int length);
/// Every J obtained from I by deleting at least one index and cyclically
/// permuting the rest (deduplicated, lengths >= 1).
std::vector<Sequence> subsequence_cycles(const Sequence& I);
std::string sequence_str(const Sequence& I);

}  // namespace milnor
