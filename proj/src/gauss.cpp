#include "milnor/gauss.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace milnor {

namespace {

struct CrossingSites {
  // crossing id -> (comp0, pos) of each endpoint
  struct Site {
    int comp = -1;
    int pos = -1;
  };
  std::map<int, Site> over, under;
};

CrossingSites index_crossings(const std::vector<std::vector<Event>>& comps) {
  CrossingSites s;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    for (int p = 0; p < static_cast<int>(comps[c].size()); ++p) {
      const Event& e = comps[c][p];
      auto& side = e.role == Role::Over ? s.over : s.under;
      side[e.crossing] = CrossingSites::Site{c, p};
    }
  }
  return s;
}

std::string role_char(Role r) { return r == Role::Over ? "O" : "U"; }

}  // namespace

BasedDiagram::BasedDiagram(std::vector<std::vector<Event>> comps) : comps_(std::move(comps)) {
  std::map<int, int> overs, unders, signs;
  for (const auto& comp : comps_) {
    for (const Event& e : comp) {
      if (e.crossing <= 0) throw ParseError("crossing ids must be positive");
      if (e.sign != 1 && e.sign != -1) throw ParseError("crossing sign must be +1 or -1");
      auto& count = e.role == Role::Over ? overs : unders;
      if (++count[e.crossing] > 1)
        throw ParseError("crossing " + std::to_string(e.crossing) + " has a duplicate " +
                         (e.role == Role::Over ? "over" : "under") + " event");
      auto [it, fresh] = signs.emplace(e.crossing, e.sign);
      if (!fresh && it->second != e.sign)
        throw ParseError("crossing " + std::to_string(e.crossing) +
                         " has mismatched signs on its two events");
    }
  }
  for (const auto& [id, n] : unders)
    if (!overs.count(id))
      throw ParseError("crossing " + std::to_string(id) + " lacks an over event");
  for (const auto& [id, n] : overs)
    if (!unders.count(id))
      throw ParseError("crossing " + std::to_string(id) + " lacks an under event");
}

BasedDiagram BasedDiagram::trivial(int components) {
  if (components < 1) throw ParseError("need at least one component");
  return BasedDiagram(std::vector<std::vector<Event>>(components));
}

int BasedDiagram::crossing_count() const {
  int events = 0;
  for (const auto& c : comps_) events += static_cast<int>(c.size());
  return events / 2;
}

int BasedDiagram::max_crossing_id() const {
  int m = 0;
  for (const auto& c : comps_)
    for (const Event& e : c) m = std::max(m, e.crossing);
  return m;
}

BasedDiagram parse_gauss_code(const std::string& text) {
  std::map<int, std::vector<Event>> lines;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "component")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'component', got '" +
                       head + "'");
    std::string idx_tok;
    if (!(ls >> idx_tok)) throw ParseError("line " + std::to_string(lineno) + ": missing component index");
    bool colon_seen = false;
    if (!idx_tok.empty() && idx_tok.back() == ':') {
      idx_tok.pop_back();
      colon_seen = true;
    }
    int ci = 0;
    try {
      std::size_t used = 0;
      ci = std::stoi(idx_tok, &used);
      if (used != idx_tok.size()) throw std::invalid_argument("");
    } catch (...) {
      throw ParseError("line " + std::to_string(lineno) + ": bad component index '" + idx_tok + "'");
    }
    if (!colon_seen) {
      std::string colon;
      if (!(ls >> colon) || colon != ":")
        throw ParseError("line " + std::to_string(lineno) + ": expected ':' after component index");
    }
    if (ci < 1) throw ParseError("line " + std::to_string(lineno) + ": component index must be >= 1");
    if (lines.count(ci))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate component " + std::to_string(ci));

    std::vector<Event> events;
    std::string tok;
    while (ls >> tok) {
      if (tok.size() < 3 || (tok[0] != 'O' && tok[0] != 'U') ||
          (tok.back() != '+' && tok.back() != '-'))
        throw ParseError("line " + std::to_string(lineno) + ": bad token '" + tok + "'");
      int id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(tok.substr(1, tok.size() - 2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument("");
      } catch (...) {
        throw ParseError("line " + std::to_string(lineno) + ": bad crossing id in '" + tok + "'");
      }
      events.push_back(Event{id, tok[0] == 'O' ? Role::Over : Role::Under,
                             tok.back() == '+' ? 1 : -1});
    }
    lines.emplace(ci, std::move(events));
  }
  if (lines.empty()) throw ParseError("no components");
  const int n = static_cast<int>(lines.size());
  std::vector<std::vector<Event>> comps;
  comps.reserve(n);
  for (int i = 1; i <= n; ++i) {
    auto it = lines.find(i);
    if (it == lines.end())
      throw ParseError("missing 'component " + std::to_string(i) + "' line");
    comps.push_back(std::move(it->second));
  }
  return BasedDiagram(std::move(comps));
}

std::string serialize(const BasedDiagram& d) {
  std::map<int, int> renum;
  int next = 1;
  for (const auto& comp : d.all())
    for (const Event& e : comp)
      if (renum.emplace(e.crossing, next).second) ++next;
  std::ostringstream os;
  for (int i = 1; i <= d.components(); ++i) {
    os << "component " << i << ":";
    for (const Event& e : d.component(i))
      os << " " << role_char(e.role) << renum[e.crossing] << (e.sign > 0 ? "+" : "-");
    os << "\n";
  }
  return os.str();
}

bool same_normalized(const BasedDiagram& a, const BasedDiagram& b) {
  return serialize(a) == serialize(b);
}

ArcTable arc_table(const BasedDiagram& d) {
  const int n = d.components();
  CrossingSites sites = index_crossings(d.all());

  // arc index of the event at (comp0, pos): number of under events before pos
  auto arc_of = [&](int comp0, int pos) {
    int arc = 0;
    const auto& ev = d.all()[comp0];
    for (int p = 0; p < pos; ++p)
      if (ev[p].role == Role::Under) ++arc;
    return arc;
  };

  ArcTable t;
  t.passes.resize(n);
  t.writhe.assign(n, 0);
  for (int c = 0; c < n; ++c) {
    const auto& ev = d.all()[c];
    for (int p = 0; p < static_cast<int>(ev.size()); ++p) {
      if (ev[p].role != Role::Under) continue;
      const auto& over = sites.over.at(ev[p].crossing);
      ArcRef u{over.comp + 1, arc_of(over.comp, over.pos)};
      t.passes[c].push_back(ArcTable::UnderPass{u, ev[p].sign});
      if (over.comp == c) t.writhe[c] += ev[p].sign;
    }
  }
  return t;
}

std::string MoveSpec::str() const {
  std::ostringstream os;
  switch (kind) {
    case MoveKind::R1Insert:
      os << "R1I c" << comp << "@" << pos << " " << (over_first ? "OU" : "UO")
         << (sign > 0 ? "+" : "-");
      break;
    case MoveKind::R1Delete:
      os << "R1D c" << comp << "@" << pos;
      break;
    case MoveKind::R2Insert:
      os << "R2I over=c" << comp << "@" << pos << " under=c" << comp2 << "@" << pos2
         << (sign > 0 ? " +" : " -") << (under_reversed ? " rev" : " fwd");
      break;
    case MoveKind::R2Delete:
      os << "R2D over=c" << comp << "@" << pos << " under=c" << comp2 << "@" << pos2;
      break;
    case MoveKind::R3:
      os << "R3 top=c" << comp << "@" << pos << " mid=c" << comp2 << "@" << pos2 << " bot=c"
         << comp3 << "@" << pos3;
      break;
    case MoveKind::OC:
      os << "OC c" << comp << "@" << pos;
      break;
    case MoveKind::Rebase:
      os << "REBASE c" << comp << " shift=" << shift;
      break;
    case MoveKind::CrossingChange:
      os << "CC x" << crossing;
      break;
  }
  return os.str();
}

namespace {

void check_comp(const BasedDiagram& d, int comp) {
  if (comp < 1 || comp > d.components()) throw MoveError("component out of range");
}

// Adjacent pair (pos, pos+1) entirely inside the linear event list; a pair
// that would wrap past the list end crosses the base point.
void check_pair(const std::vector<Event>& ev, int pos) {
  if (pos < 0) throw MoveError("move not applicable: bad position");
  if (pos + 1 >= static_cast<int>(ev.size()))
    throw MoveError("move not applicable: base point in move region");
}

struct R3Site {
  // pair start positions (comp is 0-based here)
  int tc, tp;  // top: two over events
  int mc, mp;  // middle: x under + z over
  int bc, bp;  // bottom: y under + z under
};

bool pairs_disjoint(int c1, int p1, int c2, int p2) {
  return c1 != c2 || (p1 + 1 < p2 || p2 + 1 < p1);
}

// Validates the R3 pattern at the three pair sites and checks that the sign
// pattern belongs to one of the sixteen planar variants. Both the "normal"
// and the mirrored family satisfy a rigid relation between the three signs
// and the three pair orientations.
bool r3_applicable(const std::vector<std::vector<Event>>& comps, const R3Site& s,
                   std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto in_range = [&](int c, int p) {
    return c >= 0 && c < static_cast<int>(comps.size()) && p >= 0 &&
           p + 1 < static_cast<int>(comps[c].size());
  };
  if (!in_range(s.tc, s.tp) || !in_range(s.mc, s.mp) || !in_range(s.bc, s.bp))
    return fail("pair out of range");
  if (!pairs_disjoint(s.tc, s.tp, s.mc, s.mp) || !pairs_disjoint(s.tc, s.tp, s.bc, s.bp) ||
      !pairs_disjoint(s.mc, s.mp, s.bc, s.bp))
    return fail("pairs overlap");

  const Event &t0 = comps[s.tc][s.tp], &t1 = comps[s.tc][s.tp + 1];
  const Event &m0 = comps[s.mc][s.mp], &m1 = comps[s.mc][s.mp + 1];
  const Event &b0 = comps[s.bc][s.bp], &b1 = comps[s.bc][s.bp + 1];

  if (t0.role != Role::Over || t1.role != Role::Over) return fail("top pair must be over-over");
  if (b0.role != Role::Under || b1.role != Role::Under)
    return fail("bottom pair must be under-under");

  // Middle pair: one under event of a top crossing (x) and one over event (z).
  const Event* xm = nullptr;
  const Event* zm = nullptr;
  int o_m = 0;
  if (m0.role == Role::Under && m1.role == Role::Over) {
    xm = &m0;
    zm = &m1;
    o_m = -1;  // x precedes z
  } else if (m0.role == Role::Over && m1.role == Role::Under) {
    zm = &m0;
    xm = &m1;
    o_m = +1;  // z precedes x
  } else {
    return fail("middle pair must mix one under and one over");
  }

  const int x = xm->crossing;
  const int z = zm->crossing;
  int y = 0;
  if (t0.crossing == x)
    y = t1.crossing;
  else if (t1.crossing == x)
    y = t0.crossing;
  else
    return fail("middle under event does not match a top crossing");
  if (x == y || z == x || z == y) return fail("crossings must be distinct");

  int o_b = 0;
  if (b0.crossing == y && b1.crossing == z)
    o_b = +1;  // y precedes z
  else if (b0.crossing == z && b1.crossing == y)
    o_b = -1;
  else
    return fail("bottom pair must hold the under events of the remaining crossings");

  const int o_t = (t0.crossing == y) ? +1 : -1;  // +1 when y's over precedes x's over

  const int ex = xm->sign;
  const int ey = (t0.crossing == y ? t0 : t1).sign;
  const int ez = zm->sign;

  const bool normal = ex == o_t * o_m && ey == -o_t * o_b && ez == -o_m * o_b;
  const bool mirror = ex == -o_t * o_m && ey == o_t * o_b && ez == o_m * o_b;
  if (!normal && !mirror) return fail("sign pattern not planar-realizable");
  return true;
}

}  // namespace

BasedDiagram apply_move(const BasedDiagram& d, const MoveSpec& m) {
  auto comps = d.all();
  switch (m.kind) {
    case MoveKind::R1Insert: {
      check_comp(d, m.comp);
      auto& ev = comps[m.comp - 1];
      if (m.pos < 0 || m.pos > static_cast<int>(ev.size()))
        throw MoveError("R1 insert: position out of range");
      const int id = d.max_crossing_id() + 1;
      Event first{id, m.over_first ? Role::Over : Role::Under, m.sign};
      Event second{id, m.over_first ? Role::Under : Role::Over, m.sign};
      ev.insert(ev.begin() + m.pos, {first, second});
      break;
    }
    case MoveKind::R1Delete: {
      check_comp(d, m.comp);
      auto& ev = comps[m.comp - 1];
      check_pair(ev, m.pos);
      if (ev[m.pos].crossing != ev[m.pos + 1].crossing)
        throw MoveError("R1 delete: the two events are not a kink");
      ev.erase(ev.begin() + m.pos, ev.begin() + m.pos + 2);
      break;
    }
    case MoveKind::R2Insert: {
      check_comp(d, m.comp);
      check_comp(d, m.comp2);
      auto slots = [&](int c) { return static_cast<int>(comps[c - 1].size()); };
      if (m.pos < 0 || m.pos > slots(m.comp) || m.pos2 < 0 || m.pos2 > slots(m.comp2))
        throw MoveError("R2 insert: position out of range");
      if (m.comp == m.comp2 && m.pos == m.pos2)
        throw MoveError("R2 insert: the two spots coincide");
      const int c = d.max_crossing_id() + 1;
      const int dd = c + 1;
      std::vector<Event> overs{Event{c, Role::Over, m.sign}, Event{dd, Role::Over, -m.sign}};
      std::vector<Event> unders;
      if (m.under_reversed)
        unders = {Event{dd, Role::Under, -m.sign}, Event{c, Role::Under, m.sign}};
      else
        unders = {Event{c, Role::Under, m.sign}, Event{dd, Role::Under, -m.sign}};
      // Insert at the larger position first so the smaller stays valid.
      struct Ins {
        int comp, pos;
        std::vector<Event>* what;
      };
      std::vector<Ins> ins{{m.comp, m.pos, &overs}, {m.comp2, m.pos2, &unders}};
      std::sort(ins.begin(), ins.end(), [](const Ins& a, const Ins& b) {
        if (a.comp != b.comp) return a.comp > b.comp;
        return a.pos > b.pos;
      });
      for (const Ins& i : ins) {
        auto& ev = comps[i.comp - 1];
        ev.insert(ev.begin() + i.pos, i.what->begin(), i.what->end());
      }
      break;
    }
    case MoveKind::R2Delete: {
      check_comp(d, m.comp);
      check_comp(d, m.comp2);
      auto& evo = comps[m.comp - 1];
      check_pair(evo, m.pos);
      auto& evu = comps[m.comp2 - 1];
      check_pair(evu, m.pos2);
      if (!pairs_disjoint(m.comp - 1, m.pos, m.comp2 - 1, m.pos2))
        throw MoveError("R2 delete: pairs overlap");
      const Event &o0 = evo[m.pos], &o1 = evo[m.pos + 1];
      const Event &u0 = evu[m.pos2], &u1 = evu[m.pos2 + 1];
      if (o0.role != Role::Over || o1.role != Role::Over)
        throw MoveError("R2 delete: first pair must be over-over");
      if (u0.role != Role::Under || u1.role != Role::Under)
        throw MoveError("R2 delete: second pair must be under-under");
      const bool same = (u0.crossing == o0.crossing && u1.crossing == o1.crossing);
      const bool swapped = (u0.crossing == o1.crossing && u1.crossing == o0.crossing);
      if (o0.crossing == o1.crossing || (!same && !swapped))
        throw MoveError("R2 delete: pairs do not share their two crossings");
      if (o0.sign != -o1.sign) throw MoveError("R2 delete: signs must be opposite");
      struct Del {
        int comp, pos;
      };
      std::vector<Del> dels{{m.comp - 1, m.pos}, {m.comp2 - 1, m.pos2}};
      std::sort(dels.begin(), dels.end(), [](const Del& a, const Del& b) {
        if (a.comp != b.comp) return a.comp > b.comp;
        return a.pos > b.pos;
      });
      for (const Del& del : dels) {
        auto& ev = comps[del.comp];
        ev.erase(ev.begin() + del.pos, ev.begin() + del.pos + 2);
      }
      break;
    }
    case MoveKind::R3: {
      check_comp(d, m.comp);
      check_comp(d, m.comp2);
      check_comp(d, m.comp3);
      R3Site site{m.comp - 1, m.pos, m.comp2 - 1, m.pos2, m.comp3 - 1, m.pos3};
      std::string why;
      if (!r3_applicable(comps, site, &why)) throw MoveError("R3 not applicable: " + why);
      std::swap(comps[site.tc][site.tp], comps[site.tc][site.tp + 1]);
      std::swap(comps[site.mc][site.mp], comps[site.mc][site.mp + 1]);
      std::swap(comps[site.bc][site.bp], comps[site.bc][site.bp + 1]);
      break;
    }
    case MoveKind::OC: {
      check_comp(d, m.comp);
      auto& ev = comps[m.comp - 1];
      check_pair(ev, m.pos);
      if (ev[m.pos].role != Role::Over || ev[m.pos + 1].role != Role::Over)
        throw MoveError("OC: both events must be over events");
      std::swap(ev[m.pos], ev[m.pos + 1]);
      break;
    }
    case MoveKind::Rebase: {
      check_comp(d, m.comp);
      auto& ev = comps[m.comp - 1];
      const int n = static_cast<int>(ev.size());
      if (m.shift < 0 || m.shift > n) throw MoveError("rebase: shift out of range");
      std::rotate(ev.begin(), ev.begin() + m.shift, ev.end());
      break;
    }
    case MoveKind::CrossingChange: {
      int found = 0;
      for (auto& comp : comps) {
        for (Event& e : comp) {
          if (e.crossing == m.crossing) {
            e.role = e.role == Role::Over ? Role::Under : Role::Over;
            e.sign = -e.sign;
            ++found;
          }
        }
      }
      if (found != 2) throw MoveError("crossing change: crossing id not found");
      break;
    }
  }
  return BasedDiagram(std::move(comps));
}

namespace {

std::vector<MoveSpec> enumerate_r1_deletes(const BasedDiagram& d) {
  std::vector<MoveSpec> out;
  for (int c = 1; c <= d.components(); ++c) {
    const auto& ev = d.component(c);
    for (int p = 0; p + 1 < static_cast<int>(ev.size()); ++p)
      if (ev[p].crossing == ev[p + 1].crossing)
        out.push_back(MoveSpec{.kind = MoveKind::R1Delete, .comp = c, .pos = p});
  }
  return out;
}

std::vector<MoveSpec> enumerate_oc(const BasedDiagram& d) {
  std::vector<MoveSpec> out;
  for (int c = 1; c <= d.components(); ++c) {
    const auto& ev = d.component(c);
    for (int p = 0; p + 1 < static_cast<int>(ev.size()); ++p)
      if (ev[p].role == Role::Over && ev[p + 1].role == Role::Over)
        out.push_back(MoveSpec{.kind = MoveKind::OC, .comp = c, .pos = p});
  }
  return out;
}

std::vector<MoveSpec> enumerate_r2_deletes(const BasedDiagram& d) {
  std::vector<MoveSpec> out;
  CrossingSites sites = index_crossings(d.all());
  for (int c = 1; c <= d.components(); ++c) {
    const auto& ev = d.component(c);
    for (int p = 0; p + 1 < static_cast<int>(ev.size()); ++p) {
      const Event &a = ev[p], &b = ev[p + 1];
      if (a.role != Role::Over || b.role != Role::Over) continue;
      if (a.crossing == b.crossing || a.sign != -b.sign) continue;
      const auto& ua = sites.under.at(a.crossing);
      const auto& ub = sites.under.at(b.crossing);
      if (ua.comp != ub.comp) continue;
      if (ua.pos + 1 != ub.pos && ub.pos + 1 != ua.pos) continue;
      const int upos = std::min(ua.pos, ub.pos);
      if (!pairs_disjoint(c - 1, p, ua.comp, upos)) continue;
      out.push_back(MoveSpec{.kind = MoveKind::R2Delete,
                             .comp = c,
                             .pos = p,
                             .comp2 = ua.comp + 1,
                             .pos2 = upos});
    }
  }
  return out;
}

std::vector<MoveSpec> enumerate_r3(const BasedDiagram& d) {
  std::vector<MoveSpec> out;
  const auto& comps = d.all();
  CrossingSites sites = index_crossings(comps);
  for (int tc = 0; tc < static_cast<int>(comps.size()); ++tc) {
    const auto& ev = comps[tc];
    for (int tp = 0; tp + 1 < static_cast<int>(ev.size()); ++tp) {
      if (ev[tp].role != Role::Over || ev[tp + 1].role != Role::Over) continue;
      if (ev[tp].crossing == ev[tp + 1].crossing) continue;
      for (int which = 0; which < 2; ++which) {
        const int x = which == 0 ? ev[tp].crossing : ev[tp + 1].crossing;
        const auto& ux = sites.under.at(x);
        for (int dir = -1; dir <= 1; dir += 2) {
          const int zpos = ux.pos + dir;
          if (zpos < 0 || zpos >= static_cast<int>(comps[ux.comp].size())) continue;
          const Event& ze = comps[ux.comp][zpos];
          if (ze.role != Role::Over) continue;
          const int y = which == 0 ? ev[tp + 1].crossing : ev[tp].crossing;
          const int z = ze.crossing;
          if (z == x || z == y) continue;
          const auto& uy = sites.under.at(y);
          const auto& uz = sites.under.at(z);
          if (uy.comp != uz.comp) continue;
          if (uy.pos + 1 != uz.pos && uz.pos + 1 != uy.pos) continue;
          R3Site site{tc, tp, ux.comp, std::min(ux.pos, zpos), uy.comp,
                      std::min(uy.pos, uz.pos)};
          if (!r3_applicable(comps, site)) continue;
          MoveSpec ms{.kind = MoveKind::R3,
                      .comp = site.tc + 1,
                      .pos = site.tp,
                      .comp2 = site.mc + 1,
                      .pos2 = site.mp,
                      .comp3 = site.bc + 1,
                      .pos3 = site.bp};
          const bool dup = std::any_of(out.begin(), out.end(), [&](const MoveSpec& o) {
            return o.comp == ms.comp && o.pos == ms.pos && o.comp2 == ms.comp2 &&
                   o.pos2 == ms.pos2 && o.comp3 == ms.comp3 && o.pos3 == ms.pos3;
          });
          if (!dup) out.push_back(ms);
        }
      }
    }
  }
  return out;
}

}  // namespace

MoveTrace random_moves(const BasedDiagram& d, int count, std::uint64_t seed) {
  if (count < 1) throw MoveError("random_moves: count must be >= 1");
  SplitMix64 rng(seed);
  BasedDiagram cur = d;
  std::vector<MoveSpec> trace;
  trace.reserve(count);
  while (static_cast<int>(trace.size()) < count) {
    // Kind first, then a uniform applicable site; kinds without a site are
    // skipped by resampling (R1 insertion always applies, so this terminates).
    std::optional<MoveSpec> pick;
    for (int attempt = 0; attempt < 64 && !pick; ++attempt) {
      switch (rng.below(6)) {
        case 0: {  // R1 insert
          const int c = rng.range(1, cur.components());
          pick = MoveSpec{.kind = MoveKind::R1Insert,
                          .comp = c,
                          .pos = rng.range(0, static_cast<int>(cur.component(c).size())),
                          .sign = rng.coin() ? 1 : -1,
                          .over_first = rng.coin()};
          break;
        }
        case 1: {
          auto sites = enumerate_r1_deletes(cur);
          if (!sites.empty()) pick = sites[rng.below(sites.size())];
          break;
        }
        case 2: {  // R2 insert
          std::vector<std::pair<int, int>> slots;
          for (int c = 1; c <= cur.components(); ++c)
            for (int p = 0; p <= static_cast<int>(cur.component(c).size()); ++p)
              slots.emplace_back(c, p);
          if (slots.size() < 2) break;
          const auto a = slots[rng.below(slots.size())];
          auto b = a;
          while (b == a) b = slots[rng.below(slots.size())];
          pick = MoveSpec{.kind = MoveKind::R2Insert,
                          .comp = a.first,
                          .pos = a.second,
                          .comp2 = b.first,
                          .pos2 = b.second,
                          .sign = rng.coin() ? 1 : -1,
                          .under_reversed = rng.coin()};
          break;
        }
        case 3: {
          auto sites = enumerate_r2_deletes(cur);
          if (!sites.empty()) pick = sites[rng.below(sites.size())];
          break;
        }
        case 4: {
          auto sites = enumerate_r3(cur);
          if (!sites.empty()) pick = sites[rng.below(sites.size())];
          break;
        }
        case 5: {
          auto sites = enumerate_oc(cur);
          if (!sites.empty()) pick = sites[rng.below(sites.size())];
          break;
        }
      }
    }
    if (!pick) {
      const int c = rng.range(1, cur.components());
      pick = MoveSpec{.kind = MoveKind::R1Insert, .comp = c, .pos = 0};
    }
    cur = apply_move(cur, *pick);
    trace.push_back(*pick);
  }
  return MoveTrace{std::move(cur), std::move(trace)};
}

BasedDiagram replay(const BasedDiagram& d, const std::vector<MoveSpec>& moves) {
  BasedDiagram cur = d;
  for (const MoveSpec& m : moves) cur = apply_move(cur, m);
  return cur;
}

BasedDiagram random_diagram(int components, int crossings, std::uint64_t seed) {
  if (components < 1) throw ParseError("random_diagram: need at least one component");
  if (crossings < 0) throw ParseError("random_diagram: negative crossing count");
  SplitMix64 rng(seed);
  std::vector<std::vector<Event>> comps(components);
  for (int id = 1; id <= crossings; ++id) {
    const int sign = rng.coin() ? 1 : -1;
    for (Role role : {Role::Over, Role::Under}) {
      auto& ev = comps[rng.below(components)];
      const int pos = static_cast<int>(rng.below(ev.size() + 1));
      ev.insert(ev.begin() + pos, Event{id, role, sign});
    }
  }
  return BasedDiagram(std::move(comps));
}

BasedDiagram rebase(const BasedDiagram& d, int comp, int shift) {
  return apply_move(d, MoveSpec{.kind = MoveKind::Rebase, .comp = comp, .shift = shift});
}

}  // namespace milnor
