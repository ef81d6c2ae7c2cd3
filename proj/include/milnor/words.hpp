#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

/// A signed letter over an arbitrary generator alphabet. sign is +1 or -1.
template <typename Gen>
struct SignedLetter {
  Gen gen{};
  int sign = 1;

  friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

/// A word in a free group, stored as an explicit letter list.
/// Words are plain values; free reduction is explicit via reduced().
template <typename Gen>
class BasicWord {
 public:
  using Letter = SignedLetter<Gen>;

  BasicWord() = default;
  explicit BasicWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static BasicWord letter(Gen g, int sign = 1) {
    return BasicWord(std::vector<Letter>{Letter{g, sign}});
  }

  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }

  void push(Gen g, int sign) { letters_.push_back(Letter{g, sign}); }

  BasicWord inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.push_back(Letter{it->gen, -it->sign});
    return BasicWord(std::move(out));
  }

  friend BasicWord operator*(const BasicWord& a, const BasicWord& b) {
    std::vector<Letter> out;
    out.reserve(a.letters_.size() + b.letters_.size());
    out.insert(out.end(), a.letters_.begin(), a.letters_.end());
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return BasicWord(std::move(out));
  }

  /// Free reduction: cancel adjacent g^s g^{-s} pairs until none remain.
  BasicWord reduced() const {
    std::vector<Letter> stack;
    stack.reserve(letters_.size());
    for (const Letter& l : letters_) {
      if (!stack.empty() && stack.back().gen == l.gen && stack.back().sign == -l.sign)
        stack.pop_back();
      else
        stack.push_back(l);
    }
    return BasicWord(std::move(stack));
  }

  friend bool operator==(const BasicWord&, const BasicWord&) = default;

 private:
  std::vector<Letter> letters_;
};

template <typename Gen>
BasicWord<Gen> free_reduce(const BasicWord<Gen>& w) {
  return w.reduced();
}

/// Meridian-alphabet word: generators are component indices 1..n.
using Word = BasicWord<int>;

/// Reference to an arc a_{ij}: component (1-based) and arc index j (0-based,
/// arc 0 is the outgoing arc from the base point).
struct ArcRef {
  int comp = 0;
  int idx = 0;

  friend auto operator<=>(const ArcRef&, const ArcRef&) = default;
};

using ArcWord = BasicWord<ArcRef>;

/// Commutator with the convention [x,y] = x y^-1 x^-1 y.
template <typename Gen>
BasicWord<Gen> commutator(const BasicWord<Gen>& x, const BasicWord<Gen>& y) {
  return x * y.inverse() * x.inverse() * y;
}

/// Nested commutator [g1,[g2,[...,gk]]] of single generators.
inline Word nested_commutator(std::span<const int> gens) {
  if (gens.empty()) throw std::invalid_argument("nested_commutator: empty generator list");
  Word w = Word::letter(gens.back());
  for (std::size_t i = gens.size() - 1; i-- > 0;)
    w = commutator(Word::letter(gens[i]), w);
  return w;
}

inline Word nested_commutator(std::initializer_list<int> gens) {
  return nested_commutator(std::span<const int>(gens.begin(), gens.size()));
}

}  // namespace milnor
