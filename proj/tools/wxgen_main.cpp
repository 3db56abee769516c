// SPDX-License-Identifier: Apache-2.0
//
// wxgen: train a convolutional weather generator, sample ensembles, build
// the resampling baseline and score both against observations.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wxgen/cli/commands.hpp"
#include "wxgen/cli/config.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> epochs;
  std::optional<std::string> out;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Overrides& o, bool with_seed,
                      bool with_epochs) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", o.config, "run configuration file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory (overrides paths.out)");
  if (with_seed) sub->add_option("--seed", o.seed, "seed override");
  if (with_epochs) sub->add_option("--epochs", o.epochs, "epoch count override");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wxgen - convolutional stochastic weather generator"};
  app.require_subcommand(1);
  Overrides o;
  CLI::App* train = add_command(app, "train", "fit a network to observed weather", o, true, true);
  CLI::App* generate = add_command(app, "generate", "sample an ensemble from a checkpoint", o, true, false);
  CLI::App* baseline = add_command(app, "baseline", "resample historical years (conventional method)", o, true, false);
  CLI::App* evaluate = add_command(app, "evaluate", "error tables and method comparisons", o, false, false);
  CLI::App* inspect = add_command(app, "inspect", "print the planned architecture", o, false, false);
  CLI11_PARSE(app, argc, argv);

  std::string command = "wxgen";
  for (const CLI::App* sub : app.get_subcommands()) command = sub->get_name();
  try {
    wxgen::RunConfig cfg = wxgen::load_config(o.config);
    if (o.out) cfg.paths.out = *o.out;
    if (train->parsed()) {
      if (o.seed) cfg.training.seed = *o.seed;
      if (o.epochs) cfg.training.epochs = *o.epochs;
      wxgen::cmd_train(cfg, std::cout);
    } else if (generate->parsed()) {
      if (o.seed) cfg.generation.master_seed = *o.seed;
      wxgen::cmd_generate(cfg, std::cout);
    } else if (baseline->parsed()) {
      if (o.seed) cfg.baseline.master_seed = *o.seed;
      wxgen::cmd_baseline(cfg, std::cout);
    } else if (evaluate->parsed()) {
      wxgen::cmd_evaluate(cfg, std::cout);
    } else if (inspect->parsed()) {
      wxgen::cmd_inspect(cfg, std::cout);
    }
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "wxgen " << command << ": error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
