// povm-discrim: discrimination and identification of observables measured
// with an apparatus whose outcome labels are unknown.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "povm_discrim/cli/commands.hpp"

namespace cli = povm_discrim::cli;

int main(int argc, char** argv) {
  CLI::App app{"Perfect and unambiguous discrimination of quantum observables"};
  app.require_subcommand(1);

  cli::CommandOptions opts;
  std::size_t shots = 0;
  std::string mode;
  std::vector<std::string> targets;
  double tol = 0.0;

  auto add_task_flags = [&](CLI::App* sub) {
    sub->add_option("--shots", shots, "Number of uses of the apparatus")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "Task mode")->check(CLI::IsMember({"pd", "ud", "pi", "ui"}, CLI::ignore_case));
    sub->add_option("--targets", targets, "Target observable names")->delimiter(',');
  };
  auto add_common_flags = [&](CLI::App* sub) {
    sub->add_flag("--json", opts.json, "Emit a JSON report");
    sub->add_option("--seed", opts.seed, "Random seed");
    sub->add_option("--tol", tol, "Zero tolerance override")->check(CLI::PositiveNumber);
  };

  std::string spec_path;

  auto* validate = app.add_subcommand("validate", "Check positivity and normalization of every observable");
  validate->add_option("spec", spec_path, "Observable spec file")->required();
  add_common_flags(validate);

  std::size_t n = 0, k = 0;
  auto* orbits = app.add_subcommand("orbits", "List outcome patterns of n shots with k outcomes");
  orbits->add_option("n", n, "Shots")->required()->check(CLI::PositiveNumber);
  orbits->add_option("k", k, "Outcomes")->required()->check(CLI::PositiveNumber);
  add_common_flags(orbits);

  auto* discriminate = app.add_subcommand("discriminate", "Decide perfect discrimination");
  discriminate->add_option("spec", spec_path, "Observable spec file")->required();
  discriminate->add_flag("--all-assignments", opts.all_assignments, "Report every feasible assignment");
  add_task_flags(discriminate);
  add_common_flags(discriminate);

  auto* identify = app.add_subcommand("identify", "Optimize unambiguous discrimination or identification");
  identify->add_option("spec", spec_path, "Observable spec file")->required();
  add_task_flags(identify);
  add_common_flags(identify);

  std::vector<double> a_vec, b_vec, priors{0.5, 0.5};
  std::uint64_t samples = 100'000;
  auto* explore = app.add_subcommand("explore", "Search three-shot unambiguous discrimination of a sharp qubit pair");
  explore->add_option("--a", a_vec, "Unit Bloch vector of A")->required()->expected(3)->delimiter(',');
  explore->add_option("--b", b_vec, "Unit Bloch vector of B")->required()->expected(3)->delimiter(',');
  explore->add_option("--priors", priors, "Priors of A and B")->expected(2)->delimiter(',');
  explore->add_option("--samples", samples, "Monte Carlo trials per observable");
  add_common_flags(explore);

  auto* paper = app.add_subcommand("paper", "Run the built-in reproduction checks");
  add_common_flags(paper);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kParseFailed;
  }

  try {
    if (auto cap = cli::search_cap_from_env()) opts.search_cap = *cap;
  } catch (const povm_discrim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kParseFailed;
  }
  if (shots > 0) opts.shots = shots;
  if (!mode.empty()) opts.mode = povm_discrim::parse_mode(mode);
  if (!targets.empty()) opts.targets = targets;
  if (tol > 0.0) opts.tol = tol;

  if (*validate) return cli::cmd_validate(spec_path, opts, std::cout, std::cerr);
  if (*orbits) return cli::cmd_orbits(n, k, opts, std::cout, std::cerr);
  if (*discriminate) return cli::cmd_discriminate(spec_path, opts, std::cout, std::cerr);
  if (*identify) return cli::cmd_identify(spec_path, opts, std::cout, std::cerr);
  if (*explore) {
    const povm_discrim::Vec3 a{a_vec[0], a_vec[1], a_vec[2]};
    const povm_discrim::Vec3 b{b_vec[0], b_vec[1], b_vec[2]};
    return cli::cmd_explore(a, b, {priors[0], priors[1]}, samples, opts, std::cout, std::cerr);
  }
  return cli::cmd_paper(opts, std::cout, std::cerr);
}
