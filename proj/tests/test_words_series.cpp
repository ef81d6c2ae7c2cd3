#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "milnor/series.hpp"
#include "milnor/words.hpp"
#include "oracles.hpp"

using namespace milnor;

namespace {

Word random_word(SplitMix64& rng, int n, int max_len) {
  Word w;
  const int len = rng.range(0, max_len);
  for (int i = 0; i < len; ++i) w.push(rng.range(1, n), rng.coin() ? 1 : -1);
  return w;
}

TruncSeries from_pairs(int n, int q,
                       const std::vector<std::pair<std::vector<int>, long>>& coeffs) {
  TruncSeries s(n, q);
  for (const auto& [mono, c] : coeffs) s.add_term(Mono::of(mono), c);
  return s;
}

}  // namespace

TEST_CASE("free reduction") {
  Word w;
  w.push(1, 1);
  w.push(1, -1);
  CHECK(w.reduced().empty());

  Word v;
  v.push(1, 1);
  v.push(2, 1);
  v.push(2, -1);
  v.push(1, 1);
  Word expected;
  expected.push(1, 1);
  expected.push(1, 1);
  CHECK(v.reduced() == expected);

  // idempotence on a seeded population
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Word r = random_word(rng, 3, 14).reduced();
    CHECK(r.reduced() == r);
  }
}

TEST_CASE("commutator convention [x,y] = x y^-1 x^-1 y") {
  const Word c = commutator(Word::letter(1), Word::letter(2));
  Word expected;
  expected.push(1, 1);
  expected.push(2, -1);
  expected.push(1, -1);
  expected.push(2, 1);
  CHECK(c == expected);
}

TEST_CASE("magnus expansion of generators") {
  const TruncSeries a = magnus_expand(Word::letter(1), 2, 3);
  CHECK(a == from_pairs(2, 3, {{{}, 1}, {{1}, 1}}));

  const TruncSeries ainv = magnus_expand(Word::letter(1, -1), 2, 3);
  CHECK(ainv == from_pairs(2, 3, {{{}, 1}, {{1}, -1}, {{1, 1}, 1}, {{1, 1, 1}, -1}}));
}

TEST_CASE("magnus expansion of the basic commutator") {
  const Word c = commutator(Word::letter(1), Word::letter(2));
  const TruncSeries e = magnus_expand(c, 2, 2);
  CHECK(e == from_pairs(2, 2, {{{}, 1}, {{2, 1}, 1}, {{1, 2}, -1}}));
}

TEST_CASE("series multiplication") {
  const TruncSeries gen = magnus_expand(Word::letter(1), 2, 2);
  const TruncSeries inv = magnus_expand(Word::letter(1, -1), 2, 2);
  CHECK(series_multiply(gen, inv).is_one());

  const TruncSeries prod = series_multiply(magnus_expand(Word::letter(1), 2, 2),
                                           magnus_expand(Word::letter(2), 2, 2));
  CHECK(prod == from_pairs(2, 2, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{1, 2}, 1}}));

  const TruncSeries one = TruncSeries::one(2, 2);
  CHECK(series_multiply(prod, one) == prod);

  CHECK_THROWS_AS(series_multiply(TruncSeries::one(2, 2), TruncSeries::one(2, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(series_multiply(TruncSeries::one(2, 2), TruncSeries::one(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("series inversion") {
  const TruncSeries gen = magnus_expand(Word::letter(1), 2, 3);
  CHECK(series_invert(gen) == magnus_expand(Word::letter(1, -1), 2, 3));
  CHECK(series_invert(TruncSeries::one(2, 3)).is_one());

  SplitMix64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const TruncSeries e = magnus_expand(random_word(rng, 3, 10), 3, 4);
    const TruncSeries inv = series_invert(e);
    CHECK(series_multiply(e, inv).is_one());
    CHECK(series_invert(inv) == e);
  }

  TruncSeries bad(2, 2);
  bad.add_term(Mono::of(std::vector<int>{1}), 1);
  CHECK_THROWS_AS(series_invert(bad), std::invalid_argument);
}

TEST_CASE("homomorphism and inverse laws on a seeded population") {
  SplitMix64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const int n = rng.range(2, 4);
    const int q = rng.range(1, 6);
    const Word g = random_word(rng, n, 12);
    const Word h = random_word(rng, n, 12);
    CHECK(magnus_expand(g * h, n, q) ==
          series_multiply(magnus_expand(g, n, q), magnus_expand(h, n, q)));
    CHECK(series_multiply(magnus_expand(g, n, q), magnus_expand(g.inverse(), n, q)).is_one());
  }
}

TEST_CASE("expansion agrees with the combinatorial coefficient oracle") {
  SplitMix64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const int n = rng.range(2, 3);
    const int q = rng.range(1, 4);
    const Word g = random_word(rng, n, 8);
    const TruncSeries e = magnus_expand(g, n, q);
    for (const auto& mono : oracles::all_monomials(n, q))
      CHECK(e.coeff(std::span<const int>(mono)) == oracles::magnus_coeff(g, mono));
  }
}

TEST_CASE("injectivity witness: distinct short words, distinct expansions") {
  // every reduced word of length <= 4 over two generators
  std::vector<Word> words{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int g = 1; g <= 2; ++g) {
        for (int s : {1, -1}) {
          Word ext = w;
          ext.push(g, s);
          if (ext.reduced().size() != ext.size()) continue;
          next.push_back(ext);
          words.push_back(ext);
        }
      }
    }
    frontier = std::move(next);
  }
  CHECK(words.size() == 161);
  std::set<std::string> images;
  for (const Word& w : words) images.insert(magnus_expand(w, 2, 8).str());
  CHECK(images.size() == words.size());
}

TEST_CASE("gamma_q membership detection") {
  const Word c12 = commutator(Word::letter(1), Word::letter(2));
  CHECK(in_gamma_q(c12, 2, 2));
  CHECK_FALSE(in_gamma_q(c12, 2, 3));
  CHECK(in_gamma_q(Word{}, 2, 5));

  // nested commutators of distinct generators: in Gamma_len, not Gamma_{len+1},
  // with every lowest-degree coefficient in {-1, 0, +1} and at least one +-1
  for (int len = 2; len <= 4; ++len) {
    std::vector<int> gens(len);
    for (int i = 0; i < len; ++i) gens[i] = i + 1;
    do {
      const Word w = nested_commutator(std::span<const int>(gens));
      CHECK(in_gamma_q(w, 4, len));
      CHECK_FALSE(in_gamma_q(w, 4, len + 1));
      bool unit_seen = false;
      for (const auto& mono : oracles::all_monomials(4, len)) {
        if (static_cast<int>(mono.size()) < len) {
          CHECK(oracles::magnus_coeff(w, mono) == 0);
          continue;
        }
        const mpz_class c = oracles::magnus_coeff(w, mono);
        CHECK(abs(c) <= 1);
        if (c != 0) unit_seen = true;
      }
      CHECK(unit_seen);
    } while (std::next_permutation(gens.begin(), gens.end()));
  }
}

TEST_CASE("letter out of alphabet") {
  CHECK_THROWS_AS(magnus_expand(Word::letter(3), 2, 2), std::invalid_argument);
}

TEST_CASE("series text form") {
  const Word c = commutator(Word::letter(1), Word::letter(2));
  CHECK(magnus_expand(c, 2, 2).str() == "1 - 1*X1.X2 + 1*X2.X1");
  CHECK(TruncSeries(2, 2).str() == "0");
}

TEST_CASE("stored series never keep zero coefficients or overflow the order") {
  SplitMix64 rng(47);
  for (int i = 0; i < 100; ++i) {
    const TruncSeries e = magnus_expand(random_word(rng, 3, 12), 3, 4);
    for (const auto& [m, c] : e.terms()) {
      CHECK(c != 0);
      CHECK(m.degree() <= 4);
    }
    CHECK(e.constant() == 1);
  }
}
