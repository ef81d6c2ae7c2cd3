#include "milnor/chen.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace milnor {

std::size_t word_guard() {
  static const std::size_t guard = [] {
    if (const char* env = std::getenv("MILNOR_GUARD")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1000000);
  }();
  return guard;
}

ArcWord longitude_word(const ArcTable& t, int comp) {
  ArcWord w;
  const int wi = t.writhe.at(comp - 1);
  for (int k = 0; k < std::abs(wi); ++k) w.push(ArcRef{comp, 0}, wi > 0 ? -1 : 1);
  for (int j = 1; j <= t.unders(comp); ++j) {
    const auto& p = t.pass(comp, j);
    w.push(p.over, p.sign);
  }
  return w.reduced();
}

PeripheralData longitudes(const BasedDiagram& d) {
  const ArcTable t = arc_table(d);
  PeripheralData out;
  for (int i = 1; i <= d.components(); ++i) out.longitude.push_back(longitude_word(t, i));
  return out;
}

ColoringTable chen_series(const BasedDiagram& d, int order) {
  if (order < 1) throw std::invalid_argument("chen_series: order must be >= 1");
  const int n = d.components();
  const ArcTable t = arc_table(d);

  // Level 1: every arc of component i is alpha_i.
  std::vector<std::vector<TruncSeries>> cur;
  cur.reserve(n);
  for (int i = 1; i <= n; ++i) {
    TruncSeries gen = TruncSeries::one(n, order);
    gen.add_term(Mono::of(std::vector<int>{i}), 1);
    cur.emplace_back(t.arc_count(i), gen);
  }

  for (int level = 2; level <= order; ++level) {
    std::vector<std::vector<TruncSeries>> next;
    next.reserve(n);
    for (int i = 1; i <= n; ++i) {
      TruncSeries gen = TruncSeries::one(n, order);
      gen.add_term(Mono::of(std::vector<int>{i}), 1);
      std::vector<TruncSeries> arcs;
      arcs.reserve(t.arc_count(i));
      arcs.push_back(gen);  // a_{i0}
      // Prefix products of the chain v_{ij} = u_{i1}^{e} ... u_{ij}^{e},
      // evaluated against the previous level.
      TruncSeries v = TruncSeries::one(n, order);
      TruncSeries vinv = TruncSeries::one(n, order);
      for (int j = 1; j <= t.unders(i); ++j) {
        const auto& p = t.pass(i, j);
        const TruncSeries& u = cur[p.over.comp - 1][p.over.idx];
        const TruncSeries upos = p.sign > 0 ? u : series_invert(u);
        v = series_multiply(v, upos);
        vinv = series_multiply(p.sign > 0 ? series_invert(u) : u, vinv);
        arcs.push_back(series_multiply(series_multiply(vinv, gen), v));
      }
      next.push_back(std::move(arcs));
    }
    cur = std::move(next);
  }
  return ColoringTable(n, order, std::move(cur));
}

TruncSeries series_of_word(const ColoringTable& t, const ArcWord& w) {
  TruncSeries s = TruncSeries::one(t.vars(), t.order());
  for (const auto& l : w.letters()) {
    const TruncSeries& a = t.at(l.gen);
    s = series_multiply(s, l.sign > 0 ? a : series_invert(a));
  }
  return s;
}

namespace {

// Word-engine tables for one level: words for every arc.
struct WordLevel {
  std::vector<std::vector<Word>> arcs;  // [comp0][arc]
};

constexpr std::uint64_t kLenCap = 1ull << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kLenCap - b ? kLenCap : a + b;
}

// Unreduced word lengths of eta_level(arc) by the recurrence
// len(v_ij) = len(v_{i(j-1)}) + len(u_ij), len(next arc) = 2 len(v_ij) + 1.
// Free reduction only shrinks words, so this bounds everything the engine
// would materialize; the guard is applied to these estimates.
std::vector<std::vector<std::uint64_t>> estimated_lengths(const ArcTable& t, int order) {
  const int n = t.components();
  std::vector<std::vector<std::uint64_t>> cur(n);
  for (int i = 1; i <= n; ++i) cur[i - 1].assign(t.arc_count(i), 1);
  for (int level = 2; level <= order; ++level) {
    std::vector<std::vector<std::uint64_t>> next(n);
    for (int i = 1; i <= n; ++i) {
      auto& arcs = next[i - 1];
      arcs.reserve(t.arc_count(i));
      arcs.push_back(1);
      std::uint64_t v = 0;
      for (int j = 1; j <= t.unders(i); ++j) {
        const auto& p = t.pass(i, j);
        v = sat_add(v, cur[p.over.comp - 1][p.over.idx]);
        arcs.push_back(sat_add(sat_add(v, v), 1));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

void check_guard(std::uint64_t estimate, std::size_t guard) {
  if (estimate > guard)
    throw GuardError("word engine guard exceeded (estimated " +
                     (estimate >= kLenCap ? std::string(">10^18")
                                          : std::to_string(estimate)) +
                     " letters > " + std::to_string(guard) + ")");
}

WordLevel chen_word_levels(const BasedDiagram& d, int order, std::size_t guard,
                           WordEngineStats* stats) {
  const int n = d.components();
  const ArcTable t = arc_table(d);
  const auto estimates = estimated_lengths(t, order);
  for (const auto& comp : estimates)
    for (std::uint64_t e : comp) check_guard(e, guard);
  auto track = [&](std::size_t len) {
    if (stats && len > stats->peak_letters) stats->peak_letters = len;
  };

  WordLevel cur;
  cur.arcs.resize(n);
  for (int i = 1; i <= n; ++i)
    cur.arcs[i - 1].assign(t.arc_count(i), Word::letter(i));

  for (int level = 2; level <= order; ++level) {
    WordLevel next;
    next.arcs.resize(n);
    for (int i = 1; i <= n; ++i) {
      auto& arcs = next.arcs[i - 1];
      arcs.reserve(t.arc_count(i));
      arcs.push_back(Word::letter(i));
      Word v;  // prefix v_{ij}, reduced as we go
      for (int j = 1; j <= t.unders(i); ++j) {
        const auto& p = t.pass(i, j);
        const Word& u = cur.arcs[p.over.comp - 1][p.over.idx];
        v = (v * (p.sign > 0 ? u : u.inverse())).reduced();
        track(v.size());
        arcs.push_back((v.inverse() * Word::letter(i) * v).reduced());
        track(arcs.back().size());
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Word chen_word(const BasedDiagram& d, int order, ArcRef arc, std::size_t guard) {
  if (order < 1) throw std::invalid_argument("chen_word: order must be >= 1");
  WordLevel lvl = chen_word_levels(d, order, guard, nullptr);
  return lvl.arcs.at(arc.comp - 1).at(arc.idx);
}

Word eta_longitude_word(const BasedDiagram& d, int order, int comp, std::size_t guard,
                        WordEngineStats* stats) {
  if (order < 1) throw std::invalid_argument("eta_longitude_word: order must be >= 1");
  const ArcTable t = arc_table(d);
  const ArcWord lambda = longitude_word(t, comp);
  const auto estimates = estimated_lengths(t, order);
  std::uint64_t total = 0;
  for (const auto& l : lambda.letters())
    total = sat_add(total, estimates.at(l.gen.comp - 1).at(l.gen.idx));
  check_guard(total, guard);

  WordLevel lvl = chen_word_levels(d, order, guard, stats);
  Word w;
  for (const auto& l : lambda.letters()) {
    const Word& a = lvl.arcs.at(l.gen.comp - 1).at(l.gen.idx);
    if (stats && w.size() + a.size() > stats->peak_letters)
      stats->peak_letters = w.size() + a.size();
    w = (w * (l.sign > 0 ? a : a.inverse())).reduced();
  }
  return w;
}

namespace {

void check_sequence(const BasedDiagram& d, const Sequence& I) {
  if (I.empty()) throw std::invalid_argument("mu: empty sequence");
  for (int i : I)
    if (i < 1 || i > d.components())
      throw std::invalid_argument("mu: index out of range in sequence");
}

mpz_class mu_from_series(const TruncSeries& lambda_series, const Sequence& I) {
  Sequence head(I.begin(), I.end() - 1);
  return lambda_series.coeff(std::span<const int>(head));
}

}  // namespace

mpz_class mu_at_order(const BasedDiagram& d, const Sequence& I, int q) {
  check_sequence(d, I);
  if (I.size() == 1) return 0;
  const int s = static_cast<int>(I.size()) - 1;
  if (q <= s) throw std::invalid_argument("mu_at_order: order must exceed |I| - 1");
  const ColoringTable t = chen_series(d, q);
  const ArcTable at = arc_table(d);
  const TruncSeries lambda = series_of_word(t, longitude_word(at, I.back()));
  return mu_from_series(lambda, I);
}

mpz_class mu(const BasedDiagram& d, const Sequence& I) {
  check_sequence(d, I);
  if (I.size() == 1) return 0;
  return mu_at_order(d, I, static_cast<int>(I.size()) + 1);
}

const mpz_class& MuTable::at(const Sequence& I) const {
  auto it = values.find(I);
  if (it == values.end()) throw std::invalid_argument("MuTable: sequence not tabulated");
  return it->second;
}

MuTable mu_all(const BasedDiagram& d, int max_len) {
  if (max_len < 1) throw std::invalid_argument("mu_all: max_len must be >= 1");
  MuTable out;
  out.n = d.components();
  out.max_len = max_len;

  const ColoringTable t = chen_series(d, max_len + 1);
  const ArcTable at = arc_table(d);
  std::vector<TruncSeries> lambda;
  for (int k = 1; k <= out.n; ++k)
    lambda.push_back(series_of_word(t, longitude_word(at, k)));

  for (int len = 1; len <= max_len; ++len) {
    for (Sequence& I : all_sequences(out.n, len)) {
      mpz_class v = 0;
      if (len >= 2) v = mu_from_series(lambda[I.back() - 1], I);
      out.values.emplace(std::move(I), std::move(v));
    }
  }
  return out;
}

namespace {

mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

InvariantRecord make_record(const Sequence& I, const mpz_class& mu_value,
                            const std::vector<mpz_class>& sub_values) {
  InvariantRecord rec;
  rec.I = I;
  rec.mu = mu_value;
  rec.r = max_multiplicity(I);
  rec.delta = 0;
  for (const mpz_class& v : sub_values) rec.delta = gcd_of(rec.delta, v);
  if (rec.delta > 0) {
    mpz_class m = rec.mu % rec.delta;
    if (m < 0) m += rec.delta;
    rec.mubar = m;
  } else {
    rec.mubar = rec.mu;
  }
  return rec;
}

}  // namespace

InvariantRecord delta_and_mubar(const MuTable& table, const Sequence& I) {
  if (I.size() < 2) throw std::invalid_argument("delta_and_mubar: |I| must be >= 2");
  std::vector<mpz_class> subs;
  for (const Sequence& J : subsequence_cycles(I)) subs.push_back(table.at(J));
  return make_record(I, table.at(I), subs);
}

InvariantRecord delta_and_mubar(const BasedDiagram& d, const Sequence& I) {
  if (I.size() < 2) throw std::invalid_argument("delta_and_mubar: |I| must be >= 2");
  check_sequence(d, I);
  const MuTable t = mu_all(d, static_cast<int>(I.size()));
  return delta_and_mubar(t, I);
}

std::vector<TruncSeries> phi_q(const BasedDiagram& d, int q) {
  if (q < 1) throw std::invalid_argument("phi_q: order must be >= 1");
  const ColoringTable t = chen_series(d, q);
  std::vector<TruncSeries> out;
  for (int k = 1; k <= d.components(); ++k) {
    const int last = t.arc_count(k) - 1;
    out.push_back(truncated(t.at(k, last), q - 1));
  }
  return out;
}

namespace {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << " ";
    os << "a" << l.gen;
    if (l.sign < 0) os << "^-1";
    first = false;
  }
  return os.str();
}

}  // namespace

std::string nilpotent_presentation(const BasedDiagram& d, int q, std::size_t guard) {
  if (q < 1) throw std::invalid_argument("nilpotent_presentation: order must be >= 1");
  const int n = d.components();
  std::ostringstream os;
  os << "<";
  for (int i = 1; i <= n; ++i) os << (i > 1 ? ", " : " ") << "a" << i;
  os << " |";
  bool any = false;
  for (int i = 1; i <= n; ++i) {
    const Word eta = eta_longitude_word(d, q, i, guard);
    const Word rel = commutator(Word::letter(i), eta).reduced();
    if (rel.empty()) continue;  // [a_i, 1] and powers of a_i are trivial
    os << (any ? ", " : " ") << "[a" << i << ", " << word_str(eta) << "]";
    any = true;
  }
  os << (any ? ", " : " ") << "Gamma_" << q << "F >";
  return os.str();
}

int max_multiplicity(const Sequence& I) {
  std::map<int, int> mult;
  int r = 0;
  for (int i : I) r = std::max(r, ++mult[i]);
  return r;
}

std::vector<Sequence> all_sequences(int n, int length) {
  std::vector<Sequence> out;
  if (length < 1) return out;
  Sequence cur(length, 1);
  while (true) {
    out.push_back(cur);
    int p = length - 1;
    while (p >= 0 && cur[p] == n) cur[p--] = 1;
    if (p < 0) break;
    ++cur[p];
  }
  return out;
}

std::vector<Sequence> subsequence_cycles(const Sequence& I) {
  const int len = static_cast<int>(I.size());
  std::set<Sequence> seen;
  // Proper order-preserving subsequences, by bitmask; then all cyclic shifts.
  for (unsigned mask = 1; mask + 1 < (1u << len); ++mask) {
    Sequence J;
    for (int i = 0; i < len; ++i)
      if (mask & (1u << i)) J.push_back(I[i]);
    for (std::size_t shift = 0; shift < J.size(); ++shift) {
      Sequence rot(J.begin() + shift, J.end());
      rot.insert(rot.end(), J.begin(), J.begin() + shift);
      seen.insert(std::move(rot));
    }
  }
  return std::vector<Sequence>(seen.begin(), seen.end());
}

std::string sequence_str(const Sequence& I) {
  std::ostringstream os;
  for (std::size_t i = 0; i < I.size(); ++i) os << (i ? " " : "") << I[i];
  return os.str();
}

}  // namespace milnor
