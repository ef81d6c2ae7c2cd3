#include "milnor/run.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "milnor/arrows.hpp"
#include "milnor/cut.hpp"

namespace milnor {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

BasedDiagram load_diagram(const std::string& path, const std::string& text) {
  if (ends_with(path, ".arrows")) return surgery(parse_arrows(text));
  return parse_gauss_code(text);
}

std::string mpz_str(const mpz_class& v) { return v.get_str(); }

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunReport::body(bool with_timing) const {
  std::ostringstream os;
  os << "# command: " << command << "\n";
  if (!input_digest.empty()) os << "# input-digest: " << input_digest << "\n";
  if (!engine.empty()) os << "# engine: " << engine << "\n";
  if (seed != 0) os << "# seed: " << seed << "\n";
  for (const std::string& r : rows) os << r << "\n";
  for (const std::string& v : violations) os << "violation: " << v << "\n";
  if (with_timing) os << "# wall-ms: " << wall_ms << "\n";
  return os.str();
}

RunReport run_invariants(const ComputeOptions& opt) {
  if (ends_with(opt.input_path, ".cutd")) return run_nu(opt);
  const auto t0 = Clock::now();
  const std::string text = read_file(opt.input_path);
  const BasedDiagram d = load_diagram(opt.input_path, text);

  RunReport rep;
  rep.command = "invariants " + opt.input_path + " --max-len " + std::to_string(opt.max_len);
  rep.input_digest = fnv1a_hex(text);
  rep.engine = "series";

  const MuTable table = mu_all(d, std::max(2, opt.max_len));
  std::vector<InvariantRecord> records;
  for (int len = 2; len <= std::max(2, opt.max_len); ++len)
    for (const Sequence& I : all_sequences(d.components(), len))
      records.push_back(delta_and_mubar(table, I));

  if (opt.format == "json") {
    nlohmann::json doc;
    doc["command"] = rep.command;
    doc["input_digest"] = rep.input_digest;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : records) {
      nlohmann::json row;
      row["I"] = r.I;
      row["mu"] = mpz_str(r.mu);
      row["Delta"] = mpz_str(r.delta);
      row["mubar"] = mpz_str(r.mubar);
      doc["rows"].push_back(row);
    }
    rep.rows.push_back(doc.dump());
  } else {
    rep.rows.push_back("I\tmu\tDelta\tmubar");
    for (const auto& r : records)
      rep.rows.push_back(sequence_str(r.I) + "\t" + mpz_str(r.mu) + "\t" + mpz_str(r.delta) +
                         "\t" + mpz_str(r.mubar));
  }
  if (opt.present) rep.rows.push_back(nilpotent_presentation(d, opt.q > 0 ? opt.q : opt.max_len + 1));
  if (opt.color) {
    const int q = opt.q > 0 ? opt.q : opt.max_len + 1;
    const ColoringTable t = chen_series(d, q);
    for (int i = 1; i <= d.components(); ++i)
      for (int j = 0; j < t.arc_count(i); ++j)
        rep.rows.push_back("a_" + std::to_string(i) + "," + std::to_string(j) + "\t" +
                           t.at(i, j).str());
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

RunReport run_nu(const ComputeOptions& opt) {
  const auto t0 = Clock::now();
  const std::string text = read_file(opt.input_path);
  const CutDiagram c = parse_cut(text);

  RunReport rep;
  rep.command = "nu " + opt.input_path + " --max-len " + std::to_string(opt.max_len);
  rep.input_digest = fnv1a_hex(text);
  rep.engine = "series";

  const NuTable table = nu_all(c, std::max(2, opt.max_len));
  if (opt.format == "json") {
    nlohmann::json doc;
    doc["command"] = rep.command;
    doc["input_digest"] = rep.input_digest;
    doc["rows"] = nlohmann::json::array();
    for (const auto& [I, r] : table.records) {
      nlohmann::json row;
      row["I"] = I;
      row["m"] = mpz_str(r.m);
      row["Delta"] = mpz_str(r.delta);
      row["nu"] = mpz_str(r.nu);
      doc["rows"].push_back(row);
    }
    rep.rows.push_back(doc.dump());
  } else {
    rep.rows.push_back("I\tm\tDelta\tnu");
    for (const auto& [I, r] : table.records)
      rep.rows.push_back(sequence_str(I) + "\t" + mpz_str(r.m) + "\t" + mpz_str(r.delta) + "\t" +
                         mpz_str(r.nu));
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

RunReport run_present(const ComputeOptions& opt) {
  const auto t0 = Clock::now();
  const std::string text = read_file(opt.input_path);
  const BasedDiagram d = load_diagram(opt.input_path, text);
  RunReport rep;
  const int q = opt.q > 0 ? opt.q : 3;
  rep.command = "present " + opt.input_path + " --q " + std::to_string(q);
  rep.input_digest = fnv1a_hex(text);
  rep.engine = "word";
  rep.rows.push_back(nilpotent_presentation(d, q));
  rep.wall_ms = ms_since(t0);
  return rep;
}

RunReport run_color(const ComputeOptions& opt) {
  const auto t0 = Clock::now();
  const std::string text = read_file(opt.input_path);
  const BasedDiagram d = load_diagram(opt.input_path, text);
  RunReport rep;
  const int q = opt.q > 0 ? opt.q : 3;
  rep.command = "color " + opt.input_path + " --q " + std::to_string(q);
  rep.input_digest = fnv1a_hex(text);
  rep.engine = "series";
  const ColoringTable t = chen_series(d, q);
  for (int i = 1; i <= d.components(); ++i)
    for (int j = 0; j < t.arc_count(i); ++j)
      rep.rows.push_back("a_" + std::to_string(i) + "," + std::to_string(j) + "\t" +
                         t.at(i, j).str());
  rep.wall_ms = ms_since(t0);
  return rep;
}

std::uint64_t iteration_seed(std::uint64_t master, int iter) {
  SplitMix64 rng(master + 0x632be59bd9b4e019ull * static_cast<std::uint64_t>(iter + 1));
  return rng.next();
}

namespace {

std::optional<std::string> mu_tables_equal(const MuTable& a, const MuTable& b,
                                           const std::function<bool(const Sequence&)>& filter) {
  for (const auto& [I, va] : a.values) {
    if (!filter(I)) continue;
    const mpz_class& vb = b.at(I);
    if (va != vb)
      return "mu(" + sequence_str(I) + ") changed: " + va.get_str() + " -> " + vb.get_str();
  }
  return std::nullopt;
}

std::vector<Violation> run_campaign(int iters, int jobs,
                                    const std::function<std::optional<std::string>(int)>& one) {
  std::vector<std::optional<std::string>> results(iters);
  if (jobs <= 1) {
    for (int i = 0; i < iters; ++i) results[i] = one(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < iters; i += jobs) results[i] = one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Violation> out;
  for (int i = 0; i < iters; ++i)
    if (results[i]) out.push_back(Violation{i, *results[i]});
  return out;
}

BasedDiagram small_random_diagram(SplitMix64& rng, int max_comps = 3, int max_cross = 6) {
  const int n = rng.range(1, max_comps);
  const int m = rng.range(0, max_cross);
  return random_diagram(n, m, rng.next());
}

}  // namespace

std::vector<Violation> fuzz_moves(int iters, std::uint64_t seed, int max_len, int jobs) {
  return run_campaign(iters, jobs, [=](int it) -> std::optional<std::string> {
    SplitMix64 rng(iteration_seed(seed, it));
    const BasedDiagram d = small_random_diagram(rng);
    const int count = rng.range(1, 30);
    const MoveTrace trace = random_moves(d, count, rng.next());
    const MuTable before = mu_all(d, max_len);
    const MuTable after = mu_all(trace.result, max_len);
    auto diff = mu_tables_equal(before, after, [](const Sequence&) { return true; });
    if (diff) {
      std::string detail = *diff + " | start " + serialize(d) + " trace:";
      for (const auto& m : trace.moves) detail += " " + m.str();
      return detail;
    }
    // Base relocation composed with further moves must preserve (Delta, mubar).
    BasedDiagram moved = trace.result;
    for (int c = 1; c <= moved.components(); ++c) {
      const int len = static_cast<int>(moved.component(c).size());
      if (len > 0) moved = rebase(moved, c, rng.range(0, len));
    }
    moved = random_moves(moved, rng.range(1, 10), rng.next()).result;
    const MuTable after2 = mu_all(moved, max_len);
    for (const auto& [I, v] : before.values) {
      if (I.size() < 2) continue;
      const InvariantRecord ra = delta_and_mubar(before, I);
      const InvariantRecord rb = delta_and_mubar(after2, I);
      if (ra.delta != rb.delta || ra.mubar != rb.mubar)
        return "(Delta, mubar)(" + sequence_str(I) + ") changed under rebase: (" +
               ra.delta.get_str() + ", " + ra.mubar.get_str() + ") -> (" + rb.delta.get_str() +
               ", " + rb.mubar.get_str() + ")";
    }
    return std::nullopt;
  });
}

std::vector<Violation> fuzz_wk(int iters, std::uint64_t seed, int k, int jobs) {
  if (k < 2) throw std::invalid_argument("fuzz_wk: k must be >= 2 (length <= k needs length 2)");
  return run_campaign(iters, jobs, [=](int it) -> std::optional<std::string> {
    SplitMix64 rng(iteration_seed(seed, it));
    const BasedDiagram d = small_random_diagram(rng);
    const WTree t = random_wk_tree(d, k, false, rng.next());
    const BasedDiagram d2 = tree_surgery(d, t);
    const MuTable before = mu_all(d, k);
    const MuTable after = mu_all(d2, k);
    auto diff = mu_tables_equal(before, after, [](const Sequence&) { return true; });
    if (diff) return *diff + " | W_" + std::to_string(k) + "-tree surgery on " + serialize(d);
    return std::nullopt;
  });
}

std::vector<Violation> fuzz_selfwk(int iters, std::uint64_t seed, int k, int jobs) {
  if (k < 1) throw std::invalid_argument("fuzz_selfwk: k must be >= 1");
  return run_campaign(iters, jobs, [=](int it) -> std::optional<std::string> {
    SplitMix64 rng(iteration_seed(seed, it));
    const BasedDiagram d = small_random_diagram(rng);
    const WTree t = random_wk_tree(d, k, true, rng.next());
    const BasedDiagram d2 = tree_surgery(d, t);
    const int max_len = 4;
    const MuTable before = mu_all(d, max_len);
    const MuTable after = mu_all(d2, max_len);
    auto diff = mu_tables_equal(before, after,
                                [&](const Sequence& I) { return max_multiplicity(I) <= k; });
    if (diff)
      return *diff + " | self W_" + std::to_string(k) + "-tree surgery on " + serialize(d);
    return std::nullopt;
  });
}

std::vector<Violation> fuzz_homotopy(int iters, std::uint64_t seed, int jobs) {
  return run_campaign(iters, jobs, [=](int it) -> std::optional<std::string> {
    SplitMix64 rng(iteration_seed(seed, it));
    BasedDiagram d = small_random_diagram(rng);
    // Self crossings: both events on one component. Guarantee one via a kink.
    std::vector<int> self_crossings;
    for (int c = 1; c <= d.components(); ++c) {
      std::map<int, int> count;
      for (const Event& e : d.component(c)) ++count[e.crossing];
      for (const auto& [id, n] : count)
        if (n == 2) self_crossings.push_back(id);
    }
    if (self_crossings.empty()) {
      const int c = rng.range(1, d.components());
      d = apply_move(d, MoveSpec{.kind = MoveKind::R1Insert,
                                 .comp = c,
                                 .pos = rng.range(0, static_cast<int>(d.component(c).size())),
                                 .sign = rng.coin() ? 1 : -1,
                                 .over_first = rng.coin()});
      self_crossings.push_back(d.max_crossing_id());
    }
    const int target = self_crossings[rng.below(self_crossings.size())];
    const BasedDiagram d2 =
        apply_move(d, MoveSpec{.kind = MoveKind::CrossingChange, .crossing = target});
    const int max_len = std::min(4, d.components());
    const MuTable before = mu_all(d, max_len);
    const MuTable after = mu_all(d2, max_len);
    auto diff = mu_tables_equal(before, after,
                                [](const Sequence& I) { return max_multiplicity(I) == 1; });
    if (diff)
      return *diff + " | self-crossing change at " + std::to_string(target) + " on " +
             serialize(d);
    return std::nullopt;
  });
}

RunReport run_fuzz(const FuzzOptions& opt) {
  const auto t0 = Clock::now();
  RunReport rep;
  rep.command = "fuzz --check " + opt.check + " --iters " + std::to_string(opt.iters) +
                " --seed " + std::to_string(opt.seed);
  if (opt.check == "wk" || opt.check == "selfwk") rep.command += " --k " + std::to_string(opt.k);
  rep.seed = opt.seed;
  rep.engine = "series";

  std::vector<Violation> violations;
  if (opt.check == "moves") {
    violations = fuzz_moves(opt.iters, opt.seed, opt.max_len, opt.jobs);
  } else if (opt.check == "wk") {
    violations = fuzz_wk(opt.iters, opt.seed, opt.k, opt.jobs);
  } else if (opt.check == "selfwk") {
    violations = fuzz_selfwk(opt.iters, opt.seed, opt.k, opt.jobs);
  } else if (opt.check == "homotopy") {
    violations = fuzz_homotopy(opt.iters, opt.seed, opt.jobs);
  } else {
    throw ParseError("fuzz: unknown check '" + opt.check +
                     "' (expected moves|wk|selfwk|homotopy)");
  }
  for (const Violation& v : violations)
    rep.violations.push_back("iter " + std::to_string(v.iter) + ": " + v.detail);
  rep.rows.push_back("iterations\t" + std::to_string(opt.iters));
  rep.rows.push_back("violations\t" + std::to_string(violations.size()));
  rep.exit_code = violations.empty() ? 0 : 2;
  rep.wall_ms = ms_since(t0);
  return rep;
}

RunReport run_bench(const BenchOptions& opt) {
  const auto t0 = Clock::now();
  const std::string text = read_file(opt.input_path);
  const BasedDiagram d = load_diagram(opt.input_path, text);
  RunReport rep;
  rep.command = "bench --engine " + opt.engine + " --q " + std::to_string(opt.q) + " " +
                opt.input_path;
  rep.input_digest = fnv1a_hex(text);
  rep.engine = opt.engine;

  if (opt.engine == "word") {
    WordEngineStats stats;
    bool tripped = false;
    std::string guard_msg;
    try {
      for (int i = 1; i <= d.components(); ++i)
        eta_longitude_word(d, opt.q, i, word_guard(), &stats);
    } catch (const GuardError& e) {
      tripped = true;
      guard_msg = e.what();
    }
    rep.rows.push_back("outcome\t" + std::string(tripped ? "guard exceeded" : "ok"));
    rep.rows.push_back("peak-word-letters\t" + std::to_string(stats.peak_letters));
    if (tripped) rep.rows.push_back("detail\t" + guard_msg);
  } else if (opt.engine == "series") {
    const ColoringTable t = chen_series(d, opt.q);
    std::size_t monomials = 0;
    for (int i = 1; i <= d.components(); ++i)
      for (int j = 0; j < t.arc_count(i); ++j) monomials += t.at(i, j).term_count();
    rep.rows.push_back("outcome\tok");
    rep.rows.push_back("monomials\t" + std::to_string(monomials));
  } else {
    throw ParseError("bench: unknown engine '" + opt.engine + "' (expected word|series)");
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

}  // namespace milnor
