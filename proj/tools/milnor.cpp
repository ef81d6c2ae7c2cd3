#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "milnor/run.hpp"

namespace {

void print_report(const milnor::RunReport& rep) { std::fputs(rep.body(true).c_str(), stdout); }

void add_format_flag(CLI::App* cmd, milnor::ComputeOptions& opt) {
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->default_val("tsv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor invariants for welded links and 2-dimensional cut-diagrams"};
  app.require_subcommand(1);

  milnor::ComputeOptions inv_opt;
  auto* inv = app.add_subcommand("invariants", "mu/Delta/mubar table for a diagram");
  inv->add_option("input", inv_opt.input_path, "Input .gauss or .arrows file")->required();
  inv->add_option("--max-len", inv_opt.max_len, "Maximum sequence length")->default_val(2);
  inv->add_flag("--present", inv_opt.present, "Also print the nilpotent presentation");
  inv->add_flag("--color", inv_opt.color, "Also print the coloring series");
  inv->add_option("--q", inv_opt.q, "Order for --present/--color");
  add_format_flag(inv, inv_opt);

  milnor::ComputeOptions nu_opt;
  auto* nu = app.add_subcommand("nu", "(m, Delta, nu) table for a cut-diagram");
  nu->add_option("input", nu_opt.input_path, "Input .cutd file")->required();
  nu->add_option("--max-len", nu_opt.max_len, "Maximum sequence length")->default_val(2);
  add_format_flag(nu, nu_opt);

  milnor::ComputeOptions pres_opt;
  auto* pres = app.add_subcommand("present", "Nilpotent quotient presentation");
  pres->add_option("input", pres_opt.input_path, "Input .gauss or .arrows file")->required();
  pres->add_option("--q", pres_opt.q, "Nilpotency order")->default_val(3);

  milnor::ComputeOptions color_opt;
  auto* color = app.add_subcommand("color", "Coloring series per arc");
  color->add_option("input", color_opt.input_path, "Input .gauss or .arrows file")->required();
  color->add_option("--q", color_opt.q, "Coloring order")->default_val(3);

  milnor::FuzzOptions fuzz_opt;
  auto* fuzz = app.add_subcommand("fuzz", "Run an invariance fuzzing campaign");
  fuzz->add_option("--check", fuzz_opt.check, "Campaign")
      ->check(CLI::IsMember({"moves", "wk", "selfwk", "homotopy"}))
      ->required();
  fuzz->add_option("--iters", fuzz_opt.iters, "Iterations")->default_val(100);
  fuzz->add_option("--seed", fuzz_opt.seed, "Master seed")->default_val(1);
  fuzz->add_option("--k", fuzz_opt.k, "Tree degree for wk/selfwk")->default_val(2);
  fuzz->add_option("--jobs", fuzz_opt.jobs, "Parallel workers")->default_val(1);

  milnor::BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Compare the word and series engines");
  bench->add_option("--engine", bench_opt.engine, "Engine")
      ->check(CLI::IsMember({"word", "series"}))
      ->required();
  bench->add_option("--q", bench_opt.q, "Computation order")->default_val(4);
  bench->add_option("input", bench_opt.input_path, "Input .gauss or .arrows file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inv) {
      print_report(milnor::run_invariants(inv_opt));
    } else if (*nu) {
      print_report(milnor::run_nu(nu_opt));
    } else if (*pres) {
      print_report(milnor::run_present(pres_opt));
    } else if (*color) {
      print_report(milnor::run_color(color_opt));
    } else if (*fuzz) {
      const milnor::RunReport rep = milnor::run_fuzz(fuzz_opt);
      print_report(rep);
      return rep.exit_code;
    } else if (*bench) {
      print_report(milnor::run_bench(bench_opt));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
