#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "milnor/chen.hpp"
#include "milnor/gauss.hpp"

namespace milnor {

/// Result of one CLI command. The body is reproducible from (input, seed);
/// wall_ms is reported separately so comparisons can exclude timing.
struct RunReport {
  std::string command;
  std::string input_digest;
  std::string engine;
  std::uint64_t seed = 0;
  std::vector<std::string> rows;
  std::vector<std::string> violations;
  double wall_ms = 0.0;
  int exit_code = 0;

  /// Rendered report; timing is appended only when with_timing is set.
  std::string body(bool with_timing) const;
};

/// FNV-1a digest of raw bytes, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

struct ComputeOptions {
  std::string input_path;
  int max_len = 2;
  std::string format = "tsv";  // tsv | json
  bool present = false;
  bool color = false;
  int q = 0;  // 0: derived from max_len where needed
};

/// `invariants`: mu/Delta/mubar table for `.gauss` or `.arrows` input.
RunReport run_invariants(const ComputeOptions& opt);

/// `nu`: (m, Delta, nu) table for `.cutd` input.
RunReport run_nu(const ComputeOptions& opt);

/// `present` / `color`: nilpotent presentation and coloring series.
RunReport run_present(const ComputeOptions& opt);
RunReport run_color(const ComputeOptions& opt);

struct FuzzOptions {
  std::string check;  // moves | wk | selfwk | homotopy
  int iters = 100;
  std::uint64_t seed = 1;
  int k = 2;
  int max_len = 4;
  int jobs = 1;
};

RunReport run_fuzz(const FuzzOptions& opt);

struct BenchOptions {
  std::string engine;  // word | series
  int q = 4;
  std::string input_path;
};

RunReport run_bench(const BenchOptions& opt);

/// Fuzz campaign internals, exposed for the test suites. Each returns the
/// violation descriptions (empty means the property held everywhere).
struct Violation {
  int iter = 0;
  std::string detail;
};

std::vector<Violation> fuzz_moves(int iters, std::uint64_t seed, int max_len, int jobs = 1);
std::vector<Violation> fuzz_wk(int iters, std::uint64_t seed, int k, int jobs = 1);
std::vector<Violation> fuzz_selfwk(int iters, std::uint64_t seed, int k, int jobs = 1);
std::vector<Violation> fuzz_homotopy(int iters, std::uint64_t seed, int jobs = 1);

/// Per-iteration seed derivation shared by all campaigns.
std::uint64_t iteration_seed(std::uint64_t master, int iter);

}  // namespace milnor
