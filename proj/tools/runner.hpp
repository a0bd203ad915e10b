// Copyright 2026 The ccres Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace ccres::runner {

/// Experiment kinds understood by run_experiment, in listing order.
const std::vector<std::string>& experiment_kinds();
/// One-line description per kind (same order).
std::string describe_kind(const std::string& kind);

/// INI config: [section] key = value. The [experiment] section holds kind,
/// name, seed and output_dir; every other section is kind-specific.
struct ExperimentConfig {
  boost::property_tree::ptree tree;

  std::string kind() const;
  std::string name() const;
  std::uint64_t seed() const;
  /// output_dir joined onto the output root (CCRES_OUTPUT_ROOT when set,
  /// else the current directory). Absolute output_dir values are kept.
  std::filesystem::path output_dir() const;

  /// Throws UsageError when the file cannot be read or parsed.
  static ExperimentConfig load(const std::filesystem::path& path);
  static ExperimentConfig parse(const std::string& text);
  /// Defaults for a kind, with experiment.kind set.
  static ExperimentConfig defaults(const std::string& kind);
  /// Values present in the file, with defaults filled in for everything
  /// the kind reads.
  ExperimentConfig resolved() const;
};

/// "section.key: constraint" messages; empty iff run_experiment accepts it.
std::vector<std::string> validate_config(const ExperimentConfig& config);

struct ArtifactEntry {
  std::string file;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct RunManifest {
  ExperimentConfig config;
  std::string tool_version;
  std::vector<ArtifactEntry> artifacts;
  std::vector<std::pair<std::string, double>> timings;
  std::vector<CheckResult> checks;
  /// A module error interrupted the run; the artifacts written so far are listed.
  bool partial = false;

  bool all_pass() const;
  std::string json() const;
};

/// Runs the experiment, writes its CSVs and then <name>_manifest.json into
/// the output directory. Throws UsageError when validate_config reports
/// anything (nothing is written then). Module errors become failed checks.
RunManifest run_experiment(const ExperimentConfig& config);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace ccres::runner
