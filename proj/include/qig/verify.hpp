#pragma once

// Verification suites behind `qig verify`. Every suite draws its samples from
// a sub-seed derived from the run seed and the suite name, so adding or
// skipping a suite leaves the others unchanged.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qig/json_io.hpp"

namespace qig {

struct RunConfig {
  std::uint64_t seed = 1;
  /// Per-suite tolerances; see default_tolerances() for the keys.
  std::map<std::string, double> tolerances;
  int threads = 0;  // 0: OpenMP default
  std::string format = "json";
  std::string output;  // empty: stdout
  /// Metric used by the commutators suite; empty runs the catalog set.
  std::string spec;
  double A = 0.0;

  int grid_steps = 20;  // uniform F-grid on [0.05, 0.95]
  std::uint64_t monotone_samples = 10000;  // per matrix size
  std::uint64_t action_samples = 200;
  std::size_t commutator_points = 50;
  std::size_t gradient_points = 1000;
  int flow_steps = 1000;
  double bracket_h = 1e-4;

  double tol(const std::string& key) const;
};

std::map<std::string, double> default_tolerances();

/// Applies `key = value` lines (TOML-style: '#' comments, optional
/// [tolerances] section, quoted strings). Throws InvalidInput on unknown keys
/// or malformed values.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Sets every tolerance to `value`.
void set_all_tolerances(RunConfig& cfg, double value);

/// mix_seed(seed ^ fnv1a(name)).
std::uint64_t suite_seed(std::uint64_t seed, const std::string& name);

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;  // worst ratio-free deviation reported by the suite
  Json details;
};

const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
  std::vector<std::string> failed() const;
};

/// Runs the named suites in order; report assembly is serial.
VerifyReport run_suites(const std::vector<std::string>& names, const RunConfig& cfg);

/// Deterministic JSON: config echo, per-suite results, failing list. No
/// timings or host data.
Json report_json(const VerifyReport& report, const RunConfig& cfg);

}  // namespace qig
