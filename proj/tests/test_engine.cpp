#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "milnor/chen.hpp"
#include "oracles.hpp"

using namespace milnor;

namespace {

TruncSeries gen_series(int i, int n, int q) { return magnus_expand(Word::letter(i), n, q); }

}  // namespace

TEST_CASE("longitudes of the fixtures") {
  const PeripheralData triv = longitudes(fixtures::diagram("trivial3.gauss"));
  for (int i = 1; i <= 3; ++i) CHECK(triv.of(i).empty());

  // Hopf: lambda_1 reads the over arc a_{2,0}, lambda_2 reads a_{1,1}
  const PeripheralData hopf = longitudes(fixtures::diagram("hopf.gauss"));
  CHECK(hopf.of(1) == ArcWord::letter(ArcRef{2, 0}));
  CHECK(hopf.of(2) == ArcWord::letter(ArcRef{1, 1}));

  // kink: the framing correction cancels the self over-pass
  const PeripheralData kink = longitudes(fixtures::diagram("kink.gauss"));
  CHECK(kink.of(1).empty());
}

TEST_CASE("chen series base cases") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const ColoringTable t1 = chen_series(hopf, 1);
  for (int i = 1; i <= 2; ++i)
    for (int j = 0; j < t1.arc_count(i); ++j) CHECK(t1.at(i, j) == gen_series(i, 2, 1));

  for (int q : {2, 3, 4}) {
    const ColoringTable t = chen_series(hopf, q);
    CHECK(t.at(1, 0) == gen_series(1, 2, q));
    CHECK(t.at(2, 0) == gen_series(2, 2, q));
  }
}

TEST_CASE("chen series one conjugation deep") {
  // arc a_{1,1} of the Hopf link carries alpha_2^-1 alpha_1 alpha_2
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const ColoringTable t = chen_series(hopf, 2);
  const Word conj = Word::letter(2, -1) * Word::letter(1) * Word::letter(2);
  CHECK(t.at(1, 1) == magnus_expand(conj, 2, 2));
  CHECK(t.at(1, 1).str() == "1 + 1*X1 + 1*X1.X2 - 1*X2.X1");
}

TEST_CASE("chen word engine") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  CHECK(chen_word(hopf, 1, ArcRef{1, 1}) == Word::letter(1));
  CHECK(chen_word(hopf, 1, ArcRef{2, 1}) == Word::letter(2));
  const Word conj = Word::letter(2, -1) * Word::letter(1) * Word::letter(2);
  CHECK(chen_word(hopf, 2, ArcRef{1, 1}) == conj);
}

TEST_CASE("engine equivalence on the corpus") {
  for (const char* name : fixtures::kCorpus) {
    const BasedDiagram d = fixtures::diagram(name);
    const ArcTable at = arc_table(d);
    for (int q = 1; q <= 5; ++q) {
      const ColoringTable t = chen_series(d, q);
      for (int i = 1; i <= d.components(); ++i) {
        for (int j = 0; j <= at.unders(i); ++j) {
          const Word w = chen_word(d, q, ArcRef{i, j});
          CHECK(magnus_expand(w, d.components(), q) == t.at(i, j));
        }
      }
    }
  }
}

TEST_CASE("coloring locality: the crossing equation holds per crossing") {
  for (const char* name : fixtures::kCorpus) {
    const BasedDiagram d = fixtures::diagram(name);
    const ArcTable at = arc_table(d);
    for (int q = 2; q <= 4; ++q) {
      const ColoringTable t = chen_series(d, q);
      for (int i = 1; i <= d.components(); ++i) {
        for (int j = 1; j <= at.unders(i); ++j) {
          const auto& p = at.pass(i, j);
          const TruncSeries& u = t.at(p.over);
          const TruncSeries uinv = series_invert(u);
          const TruncSeries rhs =
              p.sign > 0 ? series_multiply(series_multiply(uinv, t.at(i, j - 1)), u)
                         : series_multiply(series_multiply(u, t.at(i, j - 1)), uinv);
          CHECK(t.at(i, j) == rhs);
        }
      }
    }
  }
}

TEST_CASE("eta stability between consecutive orders") {
  for (const char* name : fixtures::kCorpus) {
    const BasedDiagram d = fixtures::diagram(name);
    const ArcTable at = arc_table(d);
    for (int q = 1; q <= 4; ++q) {
      const ColoringTable tq = chen_series(d, q);
      const ColoringTable tq1 = chen_series(d, q + 1);
      for (int i = 1; i <= d.components(); ++i) {
        for (int j = 0; j <= at.unders(i); ++j) {
          const TruncSeries drop = truncated(tq1.at(i, j), q);
          const TruncSeries diff = series_multiply(tq.at(i, j), series_invert(drop));
          CHECK(diff.min_nonconstant_degree() >= q);
        }
      }
    }
  }
}

TEST_CASE("mu of the fixtures") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  CHECK(mu(hopf, {1}) == 0);
  CHECK(mu(hopf, {2}) == 0);
  CHECK(mu(hopf, {1, 2}) == 1);
  CHECK(mu(hopf, {2, 1}) == 1);

  const BasedDiagram kink = fixtures::diagram("kink.gauss");
  for (int len = 2; len <= 4; ++len)
    for (const Sequence& I : all_sequences(1, len)) CHECK(mu(kink, I) == 0);

  const BasedDiagram bor = fixtures::diagram("borromean.gauss");
  for (int i = 1; i <= 3; ++i)
    for (int k = 1; k <= 3; ++k)
      if (i != k) CHECK(mu(bor, {i, k}) == 0);
  CHECK(abs(mu(bor, {1, 2, 3})) == 1);

  CHECK_THROWS_AS(mu(hopf, {1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(mu(hopf, Sequence{}), std::invalid_argument);
}

TEST_CASE("mu against the literal word engine and the coefficient oracle") {
  const BasedDiagram bor = fixtures::diagram("borromean.gauss");
  const Word eta3 = eta_longitude_word(bor, 3, 3);
  CHECK(oracles::magnus_coeff(eta3, {1, 2}) == mu(bor, {1, 2, 3}));

  const BasedDiagram clasp = fixtures::diagram("clasp2.gauss");
  const Word eta2 = eta_longitude_word(clasp, 2, 2);
  CHECK(oracles::magnus_coeff(eta2, {1}) == mu(clasp, {1, 2}));
}

TEST_CASE("q-stability of mu") {
  for (const char* name : fixtures::kCorpus) {
    const BasedDiagram d = fixtures::diagram(name);
    for (int len = 2; len <= 3; ++len) {
      for (const Sequence& I : all_sequences(d.components(), len)) {
        const mpz_class v1 = mu_at_order(d, I, len + 1);
        CHECK(v1 == mu_at_order(d, I, len + 2));
        CHECK(v1 == mu_at_order(d, I, len + 3));
      }
    }
  }
}

TEST_CASE("mu_all matches single-shot mu") {
  const BasedDiagram bor = fixtures::diagram("borromean.gauss");
  const MuTable t = mu_all(bor, 3);
  for (int len = 1; len <= 3; ++len)
    for (const Sequence& I : all_sequences(3, len)) CHECK(t.at(I) == mu(bor, I));
}

TEST_CASE("linking numbers against the signed-count oracle") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    const BasedDiagram d = random_diagram(rng.range(2, 3), rng.range(0, 10), rng.next());
    for (int i = 1; i <= d.components(); ++i)
      for (int k = 1; k <= d.components(); ++k)
        CHECK(mu(d, {i, k}) == oracles::linking_count(d, i, k));
  }
}

TEST_CASE("delta and mubar") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const InvariantRecord h = delta_and_mubar(hopf, {1, 2});
  CHECK(h.delta == 0);
  CHECK(h.mubar == h.mu);
  CHECK(h.r == 1);

  const BasedDiagram bor = fixtures::diagram("borromean.gauss");
  const InvariantRecord b = delta_and_mubar(bor, {1, 2, 3});
  CHECK(b.delta == 0);
  CHECK(b.mubar == b.mu);
  CHECK(abs(b.mubar) == 1);

  const BasedDiagram clasp = fixtures::diagram("clasp2.gauss");
  const InvariantRecord c = delta_and_mubar(clasp, {1, 1, 2});
  CHECK(c.delta == 2);
  CHECK(c.r == 2);
  CHECK(c.mubar >= 0);
  CHECK(c.mubar < 2);

  CHECK_THROWS_AS(delta_and_mubar(hopf, {1}), std::invalid_argument);
}

TEST_CASE("subsequence enumeration") {
  const auto subs = subsequence_cycles({1, 1, 2});
  // {(1,2),(2,1),(1,1),(1),(2)}
  CHECK(subs.size() == 5);
  const auto has = [&](const Sequence& J) {
    return std::find(subs.begin(), subs.end(), J) != subs.end();
  };
  CHECK(has({1, 2}));
  CHECK(has({2, 1}));
  CHECK(has({1, 1}));
  CHECK(has({1}));
  CHECK(has({2}));
}

TEST_CASE("phi_q fingerprints") {
  const BasedDiagram triv = fixtures::diagram("trivial3.gauss");
  for (int q : {1, 2, 3}) {
    const auto fp = phi_q(triv, q);
    for (int k = 1; k <= 3; ++k) CHECK(fp[k - 1] == gen_series(k, 3, q - 1));
  }

  // conjugation dies in the abelianization: order 2 is blind on any diagram
  const BasedDiagram bor = fixtures::diagram("borromean.gauss");
  const auto fp2 = phi_q(bor, 2);
  for (int k = 1; k <= 3; ++k) CHECK(fp2[k - 1] == gen_series(k, 3, 1));

  // Hopf at order 3: entry 1 is the class of alpha_2^-1 alpha_1 alpha_2
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const auto fp3 = phi_q(hopf, 3);
  const Word conj = Word::letter(2, -1) * Word::letter(1) * Word::letter(2);
  CHECK(fp3[0] == magnus_expand(conj, 2, 2));
}

TEST_CASE("fifty random moves on the Hopf link keep mu(12) = 1") {
  const BasedDiagram hopf = fixtures::diagram("hopf.gauss");
  const MoveTrace t = random_moves(hopf, 50, 0x50f);
  CHECK(mu(t.result, {1, 2}) == 1);
  CHECK(mu(t.result, {2, 1}) == 1);
}

TEST_CASE("move invariance smoke test") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const BasedDiagram d = random_diagram(rng.range(1, 3), rng.range(0, 5), rng.next());
    const MoveTrace t = random_moves(d, 15, rng.next());
    const MuTable before = mu_all(d, 4);
    const MuTable after = mu_all(t.result, 4);
    for (const auto& [I, v] : before.values) CHECK(after.at(I) == v);
  }
}

TEST_CASE("nilpotent presentations") {
  CHECK(nilpotent_presentation(fixtures::diagram("trivial.gauss"), 3) == "< a1 | Gamma_3F >");
  // the kink's longitude reduces to the identity; its relator is omitted
  CHECK(nilpotent_presentation(fixtures::diagram("kink.gauss"), 4) == "< a1 | Gamma_4F >");

  const std::string hopf = nilpotent_presentation(fixtures::diagram("hopf.gauss"), 2);
  CHECK(hopf == "< a1, a2 | [a1, a2], [a2, a2^-1 a1 a2], Gamma_2F >");
}

TEST_CASE("word engine size guard") {
  const BasedDiagram twelve = fixtures::diagram("twelve.gauss");
  CHECK_THROWS_AS(eta_longitude_word(twelve, 10, 1, 100000), GuardError);
  CHECK_NOTHROW(eta_longitude_word(twelve, 4, 1, 1000000));
}
