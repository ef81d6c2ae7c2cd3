#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "milnor/words.hpp"

namespace milnor {

/// A non-commutative monomial X_{i1}...X_{is}, s <= kMaxOrder, indices 1-based.
struct Mono {
  static constexpr int kMaxLen = 15;

  std::uint8_t len = 0;
  std::array<std::uint8_t, kMaxLen> idx{};

  static Mono unit() { return Mono{}; }

  int degree() const { return len; }

  void append(int var) {
    idx[len] = static_cast<std::uint8_t>(var);
    ++len;
  }

  static Mono of(std::span<const int> seq);

  std::string str() const;

  friend bool operator==(const Mono& a, const Mono& b) {
    if (a.len != b.len) return false;
    for (int i = 0; i < a.len; ++i)
      if (a.idx[i] != b.idx[i]) return false;
    return true;
  }

  /// Lexicographic order; a proper prefix sorts before its extensions.
  friend bool operator<(const Mono& a, const Mono& b) {
    const int m = a.len < b.len ? a.len : b.len;
    for (int i = 0; i < m; ++i) {
      if (a.idx[i] != b.idx[i]) return a.idx[i] < b.idx[i];
    }
    return a.len < b.len;
  }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::uint64_t h = 1469598103934665603ull;
    h = (h ^ m.len) * 1099511628211ull;
    for (int i = 0; i < m.len; ++i) h = (h ^ m.idx[i]) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

/// Integer power series in non-commuting variables X_1..X_n truncated at
/// total degree <= order. Terms are kept sparse, sorted lexicographically,
/// with no explicit zeros.
class TruncSeries {
 public:
  using Term = std::pair<Mono, mpz_class>;

  TruncSeries(int vars, int order);

  static TruncSeries one(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_one() const;

  /// Coefficient of the given monomial (zero if absent).
  const mpz_class& coeff(const Mono& m) const;
  const mpz_class& coeff(std::span<const int> seq) const { return coeff(Mono::of(seq)); }
  const mpz_class& constant() const { return coeff(Mono::unit()); }

  /// Smallest degree >= 1 carrying a nonzero coefficient, or order()+1 if none.
  int min_nonconstant_degree() const;

  void add_term(const Mono& m, const mpz_class& c);

  /// Stable text form: terms sorted canonically, e.g. "1 + 2*X1.X2 - 1*X2.X1".
  std::string str() const;

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  /// Used by the arithmetic routines; terms must be sorted and zero-free.
  static TruncSeries from_terms(int vars, int order, std::vector<Term> terms);

 private:
  int vars_;
  int order_;
  std::vector<Term> terms_;
};

/// Truncated product. Both factors must share (vars, order).
TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b);

/// Multiplicative inverse of a series with constant term 1.
TruncSeries series_invert(const TruncSeries& a);

/// Re-truncate to a smaller order.
TruncSeries truncated(const TruncSeries& a, int order);

/// Magnus expansion of a meridian word: alpha_i -> 1 + X_i,
/// alpha_i^-1 -> 1 - X_i + X_i^2 - ...
TruncSeries magnus_expand(const Word& w, int vars, int order);

/// True iff E(w) - 1 has minimal degree >= q, i.e. w lies in Gamma_q F.
bool in_gamma_q(const Word& w, int vars, int q);

}  // namespace milnor
