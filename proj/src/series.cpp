#include "milnor/series.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace milnor {

Mono Mono::of(std::span<const int> seq) {
  if (seq.size() > static_cast<std::size_t>(kMaxLen))
    throw std::invalid_argument("Mono: sequence longer than the supported order");
  Mono m;
  for (int v : seq) {
    if (v < 1 || v > 255) throw std::invalid_argument("Mono: variable index out of range");
    m.append(v);
  }
  return m;
}

std::string Mono::str() const {
  if (len == 0) return "1";
  std::string s;
  for (int i = 0; i < len; ++i) {
    if (i) s += '.';
    s += 'X';
    s += std::to_string(static_cast<int>(idx[i]));
  }
  return s;
}

TruncSeries::TruncSeries(int vars, int order) : vars_(vars), order_(order) {
  if (vars < 1) throw std::invalid_argument("TruncSeries: need at least one variable");
  if (order < 0 || order > Mono::kMaxLen)
    throw std::invalid_argument("TruncSeries: order out of range (0.." +
                                std::to_string(Mono::kMaxLen) + ")");
}

TruncSeries TruncSeries::one(int vars, int order) {
  TruncSeries s(vars, order);
  s.terms_.emplace_back(Mono::unit(), 1);
  return s;
}

bool TruncSeries::is_one() const {
  return terms_.size() == 1 && terms_[0].first.len == 0 && terms_[0].second == 1;
}

const mpz_class& TruncSeries::coeff(const Mono& m) const {
  static const mpz_class zero(0);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return zero;
}

int TruncSeries::min_nonconstant_degree() const {
  int best = order_ + 1;
  for (const Term& t : terms_)
    if (t.first.len >= 1 && t.first.len < best) best = t.first.len;
  return best;
}

void TruncSeries::add_term(const Mono& m, const mpz_class& c) {
  if (c == 0 || m.degree() > order_) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Mono& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{m, c});
  }
}

std::string TruncSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    mpz_class c = t.second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (t.first.len == 0)
      os << c.get_str();
    else
      os << c.get_str() << "*" << t.first.str();
    first = false;
  }
  return os.str();
}

TruncSeries TruncSeries::from_terms(int vars, int order, std::vector<Term> terms) {
  TruncSeries s(vars, order);
  s.terms_ = std::move(terms);
  return s;
}

namespace {

using Accum = std::unordered_map<Mono, mpz_class, MonoHash>;

TruncSeries collect(int vars, int order, Accum& acc) {
  std::vector<TruncSeries::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, std::move(c));
  std::sort(terms.begin(), terms.end(),
            [](const TruncSeries::Term& a, const TruncSeries::Term& b) { return a.first < b.first; });
  return TruncSeries::from_terms(vars, order, std::move(terms));
}

Mono concat(const Mono& a, const Mono& b) {
  Mono m = a;
  for (int i = 0; i < b.len; ++i) m.append(b.idx[i]);
  return m;
}

void check_vars(const Word& w, int vars) {
  for (const auto& l : w.letters())
    if (l.gen < 1 || l.gen > vars)
      throw std::invalid_argument("magnus_expand: letter out of alphabet");
}

}  // namespace

TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b) {
  if (a.vars() != b.vars() || a.order() != b.order())
    throw std::invalid_argument("series_multiply: mismatched (vars, order)");
  const int order = a.order();
  Accum acc;
  acc.reserve(a.term_count() + b.term_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.len + mb.len > order) continue;
      acc[concat(ma, mb)] += ca * cb;
    }
  }
  return collect(a.vars(), order, acc);
}

TruncSeries series_invert(const TruncSeries& a) {
  if (a.constant() != 1)
    throw std::invalid_argument("series_invert: constant term must be 1");
  // N = a - 1; inverse is sum of (-N)^t for t = 0..order.
  std::vector<TruncSeries::Term> nterms;
  for (const auto& t : a.terms())
    if (t.first.len >= 1) nterms.emplace_back(t.first, -t.second);
  TruncSeries neg = TruncSeries::from_terms(a.vars(), a.order(), std::move(nterms));

  TruncSeries result = TruncSeries::one(a.vars(), a.order());
  TruncSeries power = TruncSeries::one(a.vars(), a.order());
  for (int t = 1; t <= a.order(); ++t) {
    power = series_multiply(power, neg);
    if (power.term_count() == 0) break;
    for (const auto& [m, c] : power.terms()) result.add_term(m, c);
  }
  return result;
}

TruncSeries truncated(const TruncSeries& a, int order) {
  if (order > a.order())
    throw std::invalid_argument("truncated: cannot raise a series' order");
  std::vector<TruncSeries::Term> terms;
  for (const auto& t : a.terms())
    if (t.first.len <= order) terms.push_back(t);
  return TruncSeries::from_terms(a.vars(), order, std::move(terms));
}

TruncSeries magnus_expand(const Word& w, int vars, int order) {
  check_vars(w, vars);
  TruncSeries s = TruncSeries::one(vars, order);
  for (const auto& l : w.letters()) {
    Accum acc;
    acc.reserve(s.term_count() * 2);
    if (l.sign > 0) {
      // multiply on the right by 1 + X_i
      for (const auto& [m, c] : s.terms()) {
        acc[m] += c;
        if (m.len < order) {
          Mono ext = m;
          ext.append(l.gen);
          acc[ext] += c;
        }
      }
    } else {
      // multiply on the right by 1 - X_i + X_i^2 - ...
      for (const auto& [m, c] : s.terms()) {
        acc[m] += c;
        Mono ext = m;
        mpz_class v = c;
        for (int t = m.len + 1; t <= order; ++t) {
          ext.append(l.gen);
          v = -v;
          acc[ext] += v;
        }
      }
    }
    s = collect(vars, order, acc);
  }
  return s;
}

bool in_gamma_q(const Word& w, int vars, int q) {
  if (q < 1) throw std::invalid_argument("in_gamma_q: order must be >= 1");
  TruncSeries e = magnus_expand(w, vars, q);
  return e.min_nonconstant_degree() >= q;
}

}  // namespace milnor
