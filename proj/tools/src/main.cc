#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bitangent_cli/cli.hpp"

int main(int argc, char** argv) {
  using namespace bitangent::cli;

  CLI::App app{"Bitangent matrices of plane quartics from genus-3 period matrices"};
  app.require_subcommand(1);

  auto* selftest = app.add_subcommand("selftest", "Exhaustive checks of the characteristic combinatorics");
  std::string golden;
  selftest->add_option("--golden", golden, "Characteristic matrix to compare against (row notation)")
      ->check(CLI::ExistingFile);

  auto* rtau = app.add_subcommand("random-tau", "Draw a random period matrix near i*I");
  std::uint64_t rt_seed = 0;
  double rt_scale = 0.1, rt_threshold = 1e-6, rt_tol = 1e-12;
  std::string rt_out;
  rtau->add_option("--seed", rt_seed, "Random seed")->required();
  rtau->add_option("--scale", rt_scale, "Perturbation scale in [0, 0.5]");
  rtau->add_option("--degeneracy-threshold", rt_threshold, "Reject draws at or below this indicator");
  rtau->add_option("--tol", rt_tol, "Theta truncation tolerance");
  rtau->add_option("--out", rt_out, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Build, verify and report the bitangent matrix");
  RunConfig cfg;
  std::string tau_path, out_path, checks = "on";
  std::uint64_t seed = 0;
  auto* tau_opt = run->add_option("--tau", tau_path, "Period matrix JSON file");
  auto* seed_opt = run->add_option("--seed", seed, "Generate tau as random-tau would");
  tau_opt->excludes(seed_opt);
  run->add_option("--scale", cfg.scale, "Scale for --seed");
  run->add_option("--tol", cfg.tol, "Theta truncation tolerance");
  run->add_option("--degeneracy-threshold", cfg.degeneracy_threshold, "Minimum degeneracy indicator");
  run->add_option("--checks", checks, "Run verification (on|off)")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--out", out_path, "Report file (default stdout)");
  run->add_flag("-v,--verbose", cfg.verbosity, "Per-minor and per-triple detail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (*selftest) return cmd_selftest(std::cout, golden.empty() ? std::nullopt : std::optional(golden));
  if (*rtau)
    return cmd_random_tau(rt_seed, rt_scale, rt_threshold, rt_tol,
                          rt_out.empty() ? std::nullopt : std::optional(rt_out), std::cout, std::cerr);

  if (*tau_opt) cfg.tau_path = tau_path;
  if (*seed_opt) cfg.seed = seed;
  if (!out_path.empty()) cfg.out_path = out_path;
  cfg.checks = checks == "on";
  return cmd_run(cfg, std::cout, std::cerr);
}
