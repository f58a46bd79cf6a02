#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsfo/engine.hpp"

namespace dsfo::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A full experiment: one run configuration swept over a list of seeds,
/// plus output settings.
struct ExperimentConfig {
  std::string name;
  engine::RunConfig base;  // base.seed is replaced per sweep entry
  std::vector<std::uint64_t> seeds{1};
  /// Pinned reference optimum; when absent the orchestrator computes it.
  std::optional<Vec> pinned_optimum;
  std::string output_directory = "out";
  std::vector<std::string> formats{"csv"};
};

/// Parse a config file into an ExperimentConfig. Rejects unknown keys and
/// malformed values with the offending key path; does not run the semantic
/// validators (see validate_config / load_config).
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

struct ValidationSummary {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;
  std::vector<std::string> warnings;
  bool pass() const;
  std::string to_string() const;
};

/// Topology, schedule, feasibility and objective-bound checks, collected
/// without throwing.
ValidationSummary validate_config(const ExperimentConfig& cfg);

/// parse_config + validate_config; throws ConfigError when validation fails.
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; load of the written text reproduces the config.
std::string write_config(const ExperimentConfig& cfg);

/// The per-seed run configuration.
engine::RunConfig make_run_config(const ExperimentConfig& cfg, std::uint64_t seed);

}  // namespace dsfo::config
