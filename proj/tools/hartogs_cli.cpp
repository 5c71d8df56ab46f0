#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace hartogs::app;

int main(int argc, char** argv) {
  CLI::App app{"Thin Hartogs figure and smoothed disc in P2(C): construction and audits"};
  app.set_version_flag("--version", HARTOGS_VERSION);
  app.require_subcommand(1);

  CommandOptions opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON run configuration")->required();
    sub->add_option("--output", opt.output, "Write the artifact here instead of stdout");
    sub->add_option("--seed", opt.seed, "Override the configured seed");
    sub->add_option("--tolerance", opt.tolerance_overrides, "Override a tolerance, NAME=VALUE (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  };

  auto* construct = app.add_subcommand("construct", "Write figure and smoothed-disc samples as CSV");
  common(construct);
  construct->add_option("--density", opt.density, "Samples per parameter direction");

  auto* verify = app.add_subcommand("verify", "Run every audit and write the report");
  common(verify);

  auto* intersect = app.add_subcommand("intersect", "Minimize |Q| over the smoothed disc");
  common(intersect);
  auto* curve = intersect->add_option("--curve", opt.curve, "Homogeneous polynomial, e.g. \"z1^2 + (1-2i)*z2*z3\"");
  auto* random = intersect->add_option("--random", opt.random, "Number of seeded random curves");
  curve->excludes(random);
  intersect->add_option("--max-degree", opt.max_degree, "Largest degree of random curves")->needs(random);

  auto* cont = app.add_subcommand("continue", "Continue a rational element along the disc family");
  common(cont);
  cont->add_option("--function", opt.function, "N/D, @constant or @pole-crossing")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*construct) return cmd_construct(opt, std::cout, std::cerr);
  if (*verify) return cmd_verify(opt, std::cout, std::cerr);
  if (*intersect) return cmd_intersect(opt, std::cout, std::cerr);
  return cmd_continue(opt, std::cout, std::cerr);
}
