// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <iostream>

#include "CLI11.hpp"
#include "ccres/errors.hpp"
#include "runner.hpp"

namespace {

constexpr int kPass = 0, kCheckFailure = 1, kUsage = 2;

int do_run(const std::string& path) {
  const auto cfg = ccres::runner::ExperimentConfig::load(path);
  const auto m = ccres::runner::run_experiment(cfg);
  for (const auto& c : m.checks) std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
  std::cout << "output: " << m.config.output_dir().string() << (m.partial ? " (partial)" : "") << "\n";
  return m.all_pass() ? kPass : kCheckFailure;
}

int do_validate(const std::string& path) {
  const auto diags = ccres::runner::validate_config(ccres::runner::ExperimentConfig::load(path));
  for (const auto& d : diags) std::cerr << d << "\n";
  if (diags.empty()) std::cout << "ok\n";
  return diags.empty() ? kPass : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccres experiment runner"};
  app.require_subcommand(1);
  std::string path, kind;
  auto* run = app.add_subcommand("run", "run an experiment config; CSVs and a manifest go to its output directory");
  run->add_option("config", path, "INI config path")->required();
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", path, "INI config path")->required();
  auto* list = app.add_subcommand("list-experiments", "list experiment kinds");
  auto* defaults = app.add_subcommand("defaults", "print the default config of a kind");
  defaults->add_option("kind", kind, "experiment kind")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return do_run(path);
    if (*validate) return do_validate(path);
    if (*list) {
      for (const auto& k : ccres::runner::experiment_kinds())
        std::cout << k << "\t" << ccres::runner::describe_kind(k) << "\n";
      return kPass;
    }
    if (*defaults) {
      const auto cfg = ccres::runner::ExperimentConfig::defaults(kind);
      for (const auto& [section, keys] : cfg.tree) {
        std::cout << "[" << section << "]\n";
        for (const auto& [key, value] : keys) std::cout << key << " = " << value.data() << "\n";
      }
      return kPass;
    }
  } catch (const ccres::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ccres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
  return kUsage;
}
