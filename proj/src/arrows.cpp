#include "milnor/arrows.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace milnor {

Rat::Rat(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  // keep sums and cross products inside 64-bit arithmetic
  constexpr long long kBound = 1ll << 30;
  if (num > kBound || num < -kBound || den > kBound)
    throw std::invalid_argument("Rat: position out of the supported range");
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
}

bool operator<(const Rat& a, const Rat& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

ArrowPresentation::ArrowPresentation(int components, std::vector<Arrow> arrows)
    : components_(components), arrows_(std::move(arrows)) {
  if (components < 1) throw ParseError("arrow presentation: need at least one component");
  std::set<std::pair<int, std::pair<long long, long long>>> seen;
  for (Arrow& a : arrows_) {
    a.twists = ((a.twists % 2) + 2) % 2;
    for (const End* e : {&a.tail, &a.head}) {
      if (e->comp < 1 || e->comp > components)
        throw ParseError("arrow presentation: end component out of range");
      if (!seen.insert({e->comp, {e->pos.num, e->pos.den}}).second)
        throw MoveError("arrow presentation: coincident end positions");
    }
  }
}

ArrowPresentation from_diagram(const BasedDiagram& d) {
  // Event at list index p sits at position p+1; crossings map to arrows in
  // increasing id order after renumbering by first appearance.
  std::map<int, Arrow> by_id;
  for (int c = 1; c <= d.components(); ++c) {
    const auto& ev = d.component(c);
    for (int p = 0; p < static_cast<int>(ev.size()); ++p) {
      Arrow& a = by_id[ev[p].crossing];
      End e{c, Rat::of(p + 1)};
      if (ev[p].role == Role::Over) {
        a.tail = e;
      } else {
        a.head = e;
        a.twists = ev[p].sign < 0 ? 1 : 0;
      }
    }
  }
  std::vector<Arrow> arrows;
  arrows.reserve(by_id.size());
  for (auto& [id, a] : by_id) arrows.push_back(a);
  return ArrowPresentation(d.components(), std::move(arrows));
}

BasedDiagram surgery(const ArrowPresentation& p) {
  struct Endpoint {
    Rat pos;
    int arrow;
    bool is_head;
  };
  std::vector<std::vector<Endpoint>> per_comp(p.components());
  for (int i = 0; i < static_cast<int>(p.arrows().size()); ++i) {
    const Arrow& a = p.arrows()[i];
    per_comp[a.tail.comp - 1].push_back(Endpoint{a.tail.pos, i, false});
    per_comp[a.head.comp - 1].push_back(Endpoint{a.head.pos, i, true});
  }
  std::vector<std::vector<Event>> comps(p.components());
  for (int c = 0; c < p.components(); ++c) {
    auto& eps = per_comp[c];
    std::sort(eps.begin(), eps.end(),
              [](const Endpoint& a, const Endpoint& b) { return a.pos < b.pos; });
    for (const Endpoint& e : eps) {
      const Arrow& a = p.arrows()[e.arrow];
      comps[c].push_back(Event{e.arrow + 1, e.is_head ? Role::Under : Role::Over,
                               a.twists % 2 == 0 ? 1 : -1});
    }
  }
  return BasedDiagram(std::move(comps));
}

int WTree::degree() const {
  int tails = 0;
  for (const Node& n : nodes)
    if (n.left < 0) ++tails;
  return tails;
}

WTree WTree::caterpillar(const std::vector<End>& tails, End head) {
  if (tails.empty()) throw std::invalid_argument("caterpillar: need at least one tail");
  WTree t;
  t.head = head;
  int prev = -1;
  for (auto it = tails.rbegin(); it != tails.rend(); ++it) {
    WTree::Node leaf;
    leaf.tail = *it;
    t.nodes.push_back(leaf);
    const int leaf_idx = static_cast<int>(t.nodes.size()) - 1;
    if (prev < 0) {
      prev = leaf_idx;
    } else {
      WTree::Node join;
      join.left = leaf_idx;
      join.right = prev;
      t.nodes.push_back(join);
      prev = static_cast<int>(t.nodes.size()) - 1;
    }
  }
  t.root = prev;
  return t;
}

namespace {

struct TreeLetter {
  int leaf;  // node index
  int sign;
};

using TreeWord = std::vector<TreeLetter>;

TreeWord invert(const TreeWord& w) {
  TreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(TreeLetter{it->leaf, -it->sign});
  return out;
}

TreeWord tree_word(const WTree& t, int node_idx) {
  const WTree::Node& n = t.nodes.at(node_idx);
  TreeWord w;
  if (n.left < 0) {
    w.push_back(TreeLetter{node_idx, 1});
  } else {
    // [u, v] = u v^-1 u^-1 v with u the left input, v the right input
    const TreeWord u = tree_word(t, n.left);
    const TreeWord v = tree_word(t, n.right);
    w = u;
    const TreeWord vi = invert(v);
    w.insert(w.end(), vi.begin(), vi.end());
    const TreeWord ui = invert(u);
    w.insert(w.end(), ui.begin(), ui.end());
    w.insert(w.end(), v.begin(), v.end());
  }
  if (n.twists % 2 != 0) w = invert(w);
  return w;
}

}  // namespace

std::vector<Arrow> expand_tree(const WTree& t, const Rat& window) {
  if (t.nodes.empty()) throw std::invalid_argument("expand_tree: malformed tree (no nodes)");
  for (const WTree::Node& n : t.nodes) {
    const bool leaf = n.left < 0 && n.right < 0;
    const bool join = n.left >= 0 && n.right >= 0;
    if (!leaf && !join) throw std::invalid_argument("expand_tree: malformed tree node");
  }
  TreeWord w = tree_word(t, t.root);
  if (t.head_twists % 2 != 0) w = invert(w);

  const int m = static_cast<int>(w.size());
  std::map<int, int> leaf_rank;  // per-leaf sub-position counter
  std::vector<Arrow> arrows;
  arrows.reserve(m);
  for (int i = 0; i < m; ++i) {
    const WTree::Node& leaf = t.nodes.at(w[i].leaf);
    const int rank = leaf_rank[w[i].leaf]++;
    auto offset = [&](int k) {
      return Rat(static_cast<long long>(k + 1) * window.num,
                 static_cast<long long>(m + 1) * window.den);
    };
    Arrow a;
    a.tail = End{leaf.tail.comp, leaf.tail.pos + offset(rank)};
    a.head = End{t.head.comp, t.head.pos + offset(i)};
    a.twists = w[i].sign < 0 ? 1 : 0;
    arrows.push_back(a);
  }
  return arrows;
}

BasedDiagram tree_surgery(const BasedDiagram& d, const WTree& t) {
  ArrowPresentation base = from_diagram(d);
  std::vector<Arrow> arrows = base.arrows();
  std::vector<Arrow> extra = expand_tree(t);
  arrows.insert(arrows.end(), extra.begin(), extra.end());
  return surgery(ArrowPresentation(d.components(), std::move(arrows)));
}

std::vector<Word> l_words(const ArrowPresentation& p) {
  struct Endpoint {
    Rat pos;
    int arrow;
    bool is_head;
  };
  std::vector<std::vector<Endpoint>> per_comp(p.components());
  for (int i = 0; i < static_cast<int>(p.arrows().size()); ++i) {
    const Arrow& a = p.arrows()[i];
    per_comp[a.tail.comp - 1].push_back(Endpoint{a.tail.pos, i, false});
    per_comp[a.head.comp - 1].push_back(Endpoint{a.head.pos, i, true});
  }
  std::vector<Word> out;
  for (int c = 0; c < p.components(); ++c) {
    auto& eps = per_comp[c];
    std::sort(eps.begin(), eps.end(),
              [](const Endpoint& a, const Endpoint& b) { return a.pos < b.pos; });
    bool head_seen = false;
    Word w;
    for (const Endpoint& e : eps) {
      if (e.is_head) {
        head_seen = true;
        const Arrow& a = p.arrows()[e.arrow];
        w.push(a.tail.comp, a.twists % 2 == 0 ? 1 : -1);
      } else if (head_seen) {
        throw NotAscendingError("l_words: presentation is not ascending on component " +
                                std::to_string(c + 1));
      }
    }
    out.push_back(w.reduced());
  }
  return out;
}

WTree random_wk_tree(const BasedDiagram& d, int degree, bool self_only, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("random_wk_tree: degree must be >= 1");
  if (d.components() < 1) throw std::invalid_argument("random_wk_tree: empty diagram");
  SplitMix64 rng(seed);
  const int fixed_comp = rng.range(1, d.components());

  std::set<std::pair<int, std::pair<long long, long long>>> taken;
  auto place = [&]() {
    const int comp = self_only ? fixed_comp : rng.range(1, d.components());
    const int len = static_cast<int>(d.component(comp).size());
    for (int attempt = 0;; ++attempt) {
      const int gap = rng.range(0, len);
      const int jitter = rng.range(1, 2 * degree + 3);
      Rat pos = Rat::of(gap) + Rat(jitter, 2 * degree + 4);
      if (taken.insert({comp, {pos.num, pos.den}}).second) return End{comp, pos};
      if (attempt > 256) throw std::runtime_error("random_wk_tree: could not place an end");
    }
  };

  std::vector<End> tails;
  tails.reserve(degree);
  for (int i = 0; i < degree; ++i) tails.push_back(place());
  const End head = place();
  WTree t = WTree::caterpillar(tails, head);
  for (auto& n : t.nodes) n.twists = rng.coin() ? 1 : 0;
  t.head_twists = rng.coin() ? 1 : 0;
  return t;
}

ArrowPresentation parse_arrows(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int components = -1;
  std::vector<Arrow> arrows;
  auto parse_rat = [&](const std::string& tok) {
    try {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) return Rat::of(std::stoll(tok));
      return Rat(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad rational '" + tok + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("line " + std::to_string(lineno) + ": rational out of range");
    }
  };
  auto parse_end = [&](const std::string& tok) {
    const auto at = tok.find('@');
    if (at == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected <comp>@<pos>, got '" +
                       tok + "'");
    int comp = 0;
    try {
      comp = std::stoi(tok.substr(0, at));
    } catch (...) {
      throw ParseError("line " + std::to_string(lineno) + ": bad component in '" + tok + "'");
    }
    return End{comp, parse_rat(tok.substr(at + 1))};
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "components") {
      if (!(ls >> components) || components < 1)
        throw ParseError("line " + std::to_string(lineno) + ": bad component count");
    } else if (head == "arrow") {
      if (components < 0) throw ParseError("'.arrows' file must start with a components line");
      std::string tail_tok, sep, head_tok, kw;
      int twists = 0;
      if (!(ls >> tail_tok >> sep >> head_tok >> kw >> twists) || sep != "->" || kw != "twists")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected 'arrow <c>@<p> -> <c>@<p> twists <t>'");
      arrows.push_back(Arrow{parse_end(tail_tok), parse_end(head_tok), twists});
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + head + "'");
    }
  }
  if (components < 0) throw ParseError("'.arrows' file missing components line");
  return ArrowPresentation(components, std::move(arrows));
}

std::string serialize(const ArrowPresentation& p) {
  std::ostringstream os;
  os << "components " << p.components() << "\n";
  for (const Arrow& a : p.arrows())
    os << "arrow " << a.tail.comp << "@" << a.tail.pos.str() << " -> " << a.head.comp << "@"
       << a.head.pos.str() << " twists " << a.twists << "\n";
  return os.str();
}

}  // namespace milnor
