#include "milnor/cut.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace milnor {

using nlohmann::json;

CutDiagram::CutDiagram(std::vector<CutComponent> comps, std::vector<CutArc> arcs)
    : comps_(std::move(comps)), arcs_(std::move(arcs)) {
  if (comps_.empty()) throw ParseError("cut-diagram: need at least one component");
  std::map<int, const CutArc*> ids;
  auto check_region = [&](const RegionRef& r, const std::string& what) {
    if (r.comp < 1 || r.comp > components())
      throw ParseError("cut-diagram: " + what + " component out of range");
    if (r.region < 0 || r.region >= region_count(r.comp))
      throw ParseError("cut-diagram: " + what + " region out of range");
  };
  for (const CutArc& a : arcs_) {
    if (!ids.emplace(a.id, &a).second)
      throw ParseError("cut-diagram: duplicate arc id " + std::to_string(a.id));
    check_region(a.label, "arc label");
    check_region(a.front, "arc front");
    check_region(a.back, "arc back");
    if (a.front.comp != a.back.comp)
      throw ParseError("cut-diagram: arc " + std::to_string(a.id) +
                       " must separate regions of one component");
  }
  for (int i = 1; i <= components(); ++i) {
    const CutComponent& c = comps_[i - 1];
    if (c.genus < 0) throw ParseError("cut-diagram: negative genus");
    if (c.region_names.empty())
      throw ParseError("cut-diagram: component " + std::to_string(i) + " has no regions");
    if (c.base < 0 || c.base >= static_cast<int>(c.region_names.size()))
      throw ParseError("cut-diagram: based region out of range");
    if (static_cast<int>(c.loops.size()) != 2 * c.genus)
      throw ParseError("cut-diagram: component " + std::to_string(i) + " needs exactly " +
                       std::to_string(2 * c.genus) + " generator loops");
    if (static_cast<int>(c.paths.size()) != static_cast<int>(c.region_names.size()))
      throw ParseError("cut-diagram: component " + std::to_string(i) +
                       " needs one path entry per region");
    if (!c.paths[c.base].empty())
      throw ParseError("cut-diagram: the based region's path must be empty");
    const RegionRef base{i, c.base};
    for (int j = 0; j < static_cast<int>(c.region_names.size()); ++j) {
      const RegionRef endpoint =
          walk(base, c.paths[j], "path to region " + c.region_names[j] + " of component " +
                                     std::to_string(i));
      if (endpoint != RegionRef{i, j})
        throw ParseError("cut-diagram: path for region " + c.region_names[j] + " of component " +
                         std::to_string(i) + " ends in the wrong region");
    }
    for (int j = 0; j < static_cast<int>(c.loops.size()); ++j) {
      const RegionRef endpoint =
          walk(base, c.loops[j], "loop " + std::to_string(j + 1) + " of component " +
                                     std::to_string(i));
      if (endpoint != base)
        throw ParseError("cut-diagram: loop " + std::to_string(j + 1) + " of component " +
                         std::to_string(i) + " does not return to the based region");
    }
  }
}

const CutArc& CutDiagram::arc(int id) const {
  for (const CutArc& a : arcs_)
    if (a.id == id) return a;
  throw ParseError("cut-diagram: unknown arc id " + std::to_string(id));
}

RegionRef CutDiagram::walk(RegionRef start, const Path& path, const std::string& what) const {
  RegionRef cur = start;
  for (std::size_t s = 0; s < path.size(); ++s) {
    const PathStep& step = path[s];
    if (step.sign != 1 && step.sign != -1)
      throw ParseError("cut-diagram: " + what + ", step " + std::to_string(s + 1) +
                       ": sign must be +1 or -1");
    const CutArc& a = arc(step.arc);
    const RegionRef from = step.sign > 0 ? a.front : a.back;
    const RegionRef to = step.sign > 0 ? a.back : a.front;
    if (cur != from)
      throw ParseError("cut-diagram: " + what + ", step " + std::to_string(s + 1) + ": arc " +
                       std::to_string(step.arc) + " is not adjacent to the current region");
    cur = to;
  }
  return cur;
}

CutDiagram parse_cut(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("cut-diagram: invalid JSON: ") + e.what());
  }
  auto to_path = [](const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError("cut-diagram: " + what + " must be an array");
    Path p;
    for (const json& step : j) {
      if (!step.contains("arc") || !step.contains("sign"))
        throw ParseError("cut-diagram: " + what + " steps need 'arc' and 'sign'");
      p.push_back(PathStep{step["arc"].get<int>(), step["sign"].get<int>()});
    }
    return p;
  };
  try {
    if (!doc.contains("components")) throw ParseError("cut-diagram: missing 'components'");
    std::vector<CutComponent> comps;
    std::vector<std::map<std::string, int>> name_index;
    for (const json& jc : doc["components"]) {
      CutComponent c;
      c.genus = jc.at("genus").get<int>();
      for (const json& name : jc.at("regions"))
        c.region_names.push_back(name.get<std::string>());
      std::map<std::string, int> idx;
      for (int j = 0; j < static_cast<int>(c.region_names.size()); ++j)
        if (!idx.emplace(c.region_names[j], j).second)
          throw ParseError("cut-diagram: duplicate region name '" + c.region_names[j] + "'");
      const std::string base = jc.at("base").get<std::string>();
      if (!idx.count(base)) throw ParseError("cut-diagram: unknown based region '" + base + "'");
      c.base = idx[base];
      for (const json& jl : jc.at("loops")) c.loops.push_back(to_path(jl, "loop"));
      c.paths.resize(c.region_names.size());
      name_index.push_back(std::move(idx));
      comps.push_back(std::move(c));
    }
    auto to_region = [&](const json& j, const std::string& what) {
      const int comp = j.at("comp").get<int>();
      if (comp < 1 || comp > static_cast<int>(comps.size()))
        throw ParseError("cut-diagram: " + what + " component out of range");
      const std::string name = j.at("region").get<std::string>();
      auto it = name_index[comp - 1].find(name);
      if (it == name_index[comp - 1].end())
        throw ParseError("cut-diagram: " + what + " names unknown region '" + name + "'");
      return RegionRef{comp, it->second};
    };
    std::vector<CutArc> arcs;
    if (doc.contains("arcs")) {
      for (const json& ja : doc["arcs"]) {
        CutArc a;
        a.id = ja.at("id").get<int>();
        a.label = to_region(ja.at("label"), "arc label");
        a.front = to_region(ja.at("front"), "arc front");
        a.back = to_region(ja.at("back"), "arc back");
        arcs.push_back(a);
      }
    }
    if (doc.contains("paths")) {
      for (const auto& [key, value] : doc["paths"].items()) {
        const auto slash = key.find('/');
        if (slash == std::string::npos)
          throw ParseError("cut-diagram: path keys must look like '<comp>/<region>'");
        const int comp = std::stoi(key.substr(0, slash));
        if (comp < 1 || comp > static_cast<int>(comps.size()))
          throw ParseError("cut-diagram: path key component out of range");
        const std::string name = key.substr(slash + 1);
        auto it = name_index[comp - 1].find(name);
        if (it == name_index[comp - 1].end())
          throw ParseError("cut-diagram: path key names unknown region '" + name + "'");
        comps[comp - 1].paths[it->second] = to_path(value, "path " + key);
      }
    }
    return CutDiagram(std::move(comps), std::move(arcs));
  } catch (const json::exception& e) {
    throw ParseError(std::string("cut-diagram: schema violation: ") + e.what());
  }
}

RegionWord loop_word(const CutDiagram& c, int comp, const Path& loop) {
  const RegionRef base{comp, c.comp(comp).base};
  const RegionRef endpoint = c.walk(base, loop, "loop word");
  if (endpoint != base) throw ParseError("loop_word: loop does not return to the based region");
  int wi = 0;
  for (const PathStep& s : loop)
    if (c.arc(s.arc).label.comp == comp) wi += s.sign;
  RegionWord w;
  for (int k = 0; k < std::abs(wi); ++k) w.push(base, wi > 0 ? -1 : 1);
  for (const PathStep& s : loop) w.push(c.arc(s.arc).label, s.sign);
  return w.reduced();
}

RegionWord loop_word(const CutDiagram& c, int comp, int loop_index) {
  const auto& loops = c.comp(comp).loops;
  if (loop_index < 0 || loop_index >= static_cast<int>(loops.size()))
    throw std::invalid_argument("loop_word: loop index out of range");
  return loop_word(c, comp, loops[loop_index]);
}

CutColoring chen_series_cut(const CutDiagram& c, int order) {
  if (order < 1) throw std::invalid_argument("chen_series_cut: order must be >= 1");
  const int n = c.components();

  std::vector<std::vector<TruncSeries>> cur;
  for (int i = 1; i <= n; ++i) {
    TruncSeries gen = TruncSeries::one(n, order);
    gen.add_term(Mono::of(std::vector<int>{i}), 1);
    cur.emplace_back(c.region_count(i), gen);
  }

  for (int level = 2; level <= order; ++level) {
    std::vector<std::vector<TruncSeries>> next;
    for (int i = 1; i <= n; ++i) {
      const CutComponent& comp = c.comp(i);
      TruncSeries gen = TruncSeries::one(n, order);
      gen.add_term(Mono::of(std::vector<int>{i}), 1);
      std::vector<TruncSeries> regions;
      regions.reserve(c.region_count(i));
      for (int j = 0; j < c.region_count(i); ++j) {
        if (j == comp.base) {
          regions.push_back(gen);
          continue;
        }
        TruncSeries v = TruncSeries::one(n, order);
        for (const PathStep& s : comp.paths[j]) {
          const RegionRef label = c.arc(s.arc).label;
          const TruncSeries& u = cur[label.comp - 1][label.region];
          v = series_multiply(v, s.sign > 0 ? u : series_invert(u));
        }
        regions.push_back(series_multiply(series_multiply(series_invert(v), gen), v));
      }
      next.push_back(std::move(regions));
    }
    cur = std::move(next);
  }
  return CutColoring(n, order, std::move(cur));
}

TruncSeries series_of_word(const CutColoring& t, const RegionWord& w) {
  TruncSeries s = TruncSeries::one(t.vars(), t.order());
  for (const auto& l : w.letters()) {
    const TruncSeries& a = t.at(l.gen);
    s = series_multiply(s, l.sign > 0 ? a : series_invert(a));
  }
  return s;
}

mpz_class mu_loop(const CutDiagram& c, const Sequence& I, int comp, int loop_index) {
  if (I.empty()) throw std::invalid_argument("mu_loop: empty sequence");
  for (int i : I)
    if (i < 1 || i > c.components()) throw std::invalid_argument("mu_loop: index out of range");
  const int q = static_cast<int>(I.size()) + 1;
  const CutColoring t = chen_series_cut(c, q);
  const TruncSeries s = series_of_word(t, loop_word(c, comp, loop_index));
  return s.coeff(std::span<const int>(I));
}

namespace {

mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// m(Ji) = gcd over the longitude system of component i; gcd of the empty
// set is 0 (spheres), and length-1 sequences get m = 0 like mu(k) = 0.
mpz_class m_value(const CutDiagram& c, const Sequence& J,
                  std::map<Sequence, mpz_class>& cache,
                  const std::map<int, CutColoring>& tables) {
  if (J.size() < 2) return 0;
  auto it = cache.find(J);
  if (it != cache.end()) return it->second;
  const int i = J.back();
  const Sequence head(J.begin(), J.end() - 1);
  const CutColoring& t = tables.at(static_cast<int>(J.size()));
  mpz_class m = 0;
  for (int j = 0; j < static_cast<int>(c.comp(i).loops.size()); ++j) {
    const TruncSeries s = series_of_word(t, loop_word(c, i, j));
    m = gcd_of(m, s.coeff(std::span<const int>(head)));
  }
  cache.emplace(J, m);
  return m;
}

NuRecord nu_record(const CutDiagram& c, const Sequence& I,
                   std::map<Sequence, mpz_class>& cache,
                   const std::map<int, CutColoring>& tables) {
  NuRecord rec;
  rec.I = I;
  rec.m = m_value(c, I, cache, tables);
  rec.delta = 0;
  for (const Sequence& J : subsequence_cycles(I))
    rec.delta = gcd_of(rec.delta, m_value(c, J, cache, tables));
  rec.nu = gcd_of(rec.m, rec.delta);
  return rec;
}

std::map<int, CutColoring> make_tables(const CutDiagram& c, int max_len) {
  std::map<int, CutColoring> tables;
  for (int len = 2; len <= max_len; ++len) tables.emplace(len, chen_series_cut(c, len));
  return tables;
}

}  // namespace

NuRecord nu(const CutDiagram& c, const Sequence& I) {
  if (I.size() < 2) throw std::invalid_argument("nu: |I| must be >= 2");
  for (int i : I)
    if (i < 1 || i > c.components())
      throw std::invalid_argument("nu: terminal index out of range");
  const int len = static_cast<int>(I.size());
  auto tables = make_tables(c, len);
  std::map<Sequence, mpz_class> cache;
  return nu_record(c, I, cache, tables);
}

NuTable nu_all(const CutDiagram& c, int max_len) {
  if (max_len < 2) throw std::invalid_argument("nu_all: max_len must be >= 2");
  NuTable out;
  out.n = c.components();
  out.max_len = max_len;
  auto tables = make_tables(c, max_len);
  std::map<Sequence, mpz_class> cache;
  for (int len = 2; len <= max_len; ++len)
    for (const Sequence& I : all_sequences(out.n, len))
      out.records.emplace(I, nu_record(c, I, cache, tables));
  return out;
}

CutDiagram tube_from_diagram(const BasedDiagram& d) {
  const ArcTable t = arc_table(d);
  const int n = d.components();

  // Region of an arc: the ingoing arc a_{i r_i} glues back to the based
  // region on the torus (the base point is not a cut).
  auto region_of = [&](const ArcRef& a) {
    const int r = t.unders(a.comp);
    const int idx = (r >= 1 && a.idx == r) ? 0 : a.idx;
    return RegionRef{a.comp, idx};
  };

  std::vector<CutComponent> comps(n);
  std::vector<CutArc> arcs;
  int next_arc = 1;
  std::vector<std::vector<int>> arc_ids(n);  // per component, one per crossing
  for (int i = 1; i <= n; ++i) {
    const int r = t.unders(i);
    CutComponent& c = comps[i - 1];
    c.genus = 1;
    const int regions = std::max(1, r);
    for (int j = 0; j < regions; ++j) c.region_names.push_back("a" + std::to_string(j));
    c.base = 0;
    c.paths.resize(regions);
    for (int j = 1; j <= r; ++j) arc_ids[i - 1].push_back(next_arc++);
  }
  for (int i = 1; i <= n; ++i) {
    const int r = t.unders(i);
    for (int j = 1; j <= r; ++j) {
      const auto& p = t.pass(i, j);
      CutArc a;
      a.id = arc_ids[i - 1][j - 1];
      a.label = region_of(p.over);
      const RegionRef before = region_of(ArcRef{i, j - 1});
      const RegionRef after = region_of(ArcRef{i, j});
      a.front = p.sign > 0 ? before : after;
      a.back = p.sign > 0 ? after : before;
      arcs.push_back(a);
    }
    CutComponent& c = comps[i - 1];
    Path longitude;
    for (int j = 1; j <= r; ++j)
      longitude.push_back(PathStep{arc_ids[i - 1][j - 1], t.pass(i, j).sign});
    c.loops.push_back(std::move(longitude));
    c.loops.push_back(Path{});  // meridian direction crosses no arcs
    for (int j = 1; j < std::max(1, r); ++j) {
      Path p;
      for (int l = 1; l <= j; ++l)
        p.push_back(PathStep{arc_ids[i - 1][l - 1], t.pass(i, l).sign});
      c.paths[j] = std::move(p);
    }
  }
  return CutDiagram(std::move(comps), std::move(arcs));
}

CutDiagram rebase_cut(const CutDiagram& c, int comp, int new_base_region) {
  if (comp < 1 || comp > c.components())
    throw std::invalid_argument("rebase_cut: component out of range");
  if (new_base_region < 0 || new_base_region >= c.region_count(comp))
    throw std::invalid_argument("rebase_cut: region out of range");

  // BFS over the region adjacency of this component.
  const int regions = c.region_count(comp);
  std::vector<Path> path_from_new(regions);
  std::vector<bool> seen(regions, false);
  std::deque<int> queue;
  queue.push_back(new_base_region);
  seen[new_base_region] = true;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (const CutArc& a : c.arcs()) {
      if (a.front.comp != comp) continue;
      for (int dir : {1, -1}) {
        const RegionRef from = dir > 0 ? a.front : a.back;
        const RegionRef to = dir > 0 ? a.back : a.front;
        if (from.region != cur || seen[to.region]) continue;
        seen[to.region] = true;
        path_from_new[to.region] = path_from_new[cur];
        path_from_new[to.region].push_back(PathStep{a.id, dir});
        queue.push_back(to.region);
      }
    }
  }
  for (int j = 0; j < regions; ++j)
    if (!seen[j])
      throw std::invalid_argument("rebase_cut: region not reachable from the new base");

  auto inverse_path = [](const Path& p) {
    Path out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(PathStep{it->arc, -it->sign});
    return out;
  };

  std::vector<CutComponent> comps;
  for (int i = 1; i <= c.components(); ++i) comps.push_back(c.comp(i));
  CutComponent& target = comps[comp - 1];
  const Path to_old = path_from_new[target.base];
  const Path from_old = inverse_path(to_old);
  for (Path& loop : target.loops) {
    Path conj = to_old;
    conj.insert(conj.end(), loop.begin(), loop.end());
    conj.insert(conj.end(), from_old.begin(), from_old.end());
    loop = std::move(conj);
  }
  target.base = new_base_region;
  target.paths = std::move(path_from_new);
  return CutDiagram(std::move(comps), c.arcs());
}

}  // namespace milnor
