#pragma once

// Test-only oracles, kept independent of the library's series engine.

#include <gmpxx.h>

#include <map>
#include <vector>

#include "milnor/gauss.hpp"
#include "milnor/words.hpp"

namespace oracles {

// Coefficient of the monomial X_{m1}...X_{ms} in the Magnus expansion of w,
// by direct combinatorial counting: every way of splitting the monomial into
// consecutive blocks assigned to successive letters, where a letter alpha_i
// (sign +1) can produce X_i^0 or X_i^1 and alpha_i^-1 produces X_i^c with
// weight (-1)^c. Independent of the library's truncated-series arithmetic.
inline mpz_class magnus_coeff(const milnor::Word& w, const std::vector<int>& mono) {
  const auto& letters = w.letters();
  const int L = static_cast<int>(letters.size());
  const int S = static_cast<int>(mono.size());
  // dp[t] = weighted count of ways to emit the first t monomial factors
  // using the letters processed so far.
  std::vector<mpz_class> dp(S + 1);
  dp[0] = 1;
  for (int p = 0; p < L; ++p) {
    const int gen = letters[p].gen;
    const int sign = letters[p].sign;
    std::vector<mpz_class> next(S + 1);
    for (int t = 0; t <= S; ++t) {
      if (dp[t] == 0) continue;
      next[t] += dp[t];  // letter contributes degree 0
      if (sign > 0) {
        if (t < S && mono[t] == gen) next[t + 1] += dp[t];
      } else {
        mpz_class weight = 1;
        for (int c = 1; t + c <= S; ++c) {
          if (mono[t + c - 1] != gen) break;
          weight = -weight;
          next[t + c] += dp[t] * weight;
        }
      }
    }
    dp = std::move(next);
  }
  return dp[S];
}

// All monomials over variables 1..n with degree in [1, q].
inline std::vector<std::vector<int>> all_monomials(int n, int q) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> cur{{}};
  for (int d = 1; d <= q; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& m : cur) {
      for (int v = 1; v <= n; ++v) {
        auto ext = m;
        ext.push_back(v);
        out.push_back(ext);
        next.push_back(std::move(ext));
      }
    }
    cur = std::move(next);
  }
  return out;
}

// Signed count of crossings whose over strand lies on component i and whose
// under strand lies on component k; the length-2 Milnor number mu(ik).
inline mpz_class linking_count(const milnor::BasedDiagram& d, int i, int k) {
  if (i == k) return 0;
  std::map<int, int> over_comp;
  for (int c = 1; c <= d.components(); ++c)
    for (const milnor::Event& e : d.component(c))
      if (e.role == milnor::Role::Over) over_comp[e.crossing] = c;
  mpz_class total = 0;
  for (const milnor::Event& e : d.component(k))
    if (e.role == milnor::Role::Under && over_comp.at(e.crossing) == i) total += e.sign;
  return total;
}

}  // namespace oracles
