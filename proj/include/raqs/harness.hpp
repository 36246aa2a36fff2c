#pragma once

// Monte Carlo sweeps over schemes, blocked-flow counts, sigma and beta with
// paired seeding, plus CSV emission and aggregation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "raqs/baselines.hpp"
#include "raqs/scenario.hpp"

namespace raqs {

struct SweepSpec {
  std::vector<SchemeId> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  std::vector<std::size_t> blocked_counts{5};
  std::vector<double> sigma_values{0.01};
  std::vector<double> beta_values{0.53};
  std::size_t repetitions = 100;
  ScenarioParams base;
  std::uint64_t master_seed = 42;
  unsigned threads = 1;

  /// Throws std::invalid_argument, e.g. "blocked > flows".
  void validate() const;
};

struct ResultRow {
  SchemeId scheme = SchemeId::Raqs;
  std::size_t blocked = 0;
  double sigma = 0.0;
  double beta = 0.0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  std::size_t completed = 0;
  double throughput_bps = 0.0;
};

struct AggregateRow {
  SchemeId scheme = SchemeId::Raqs;
  std::size_t blocked = 0;
  double sigma = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  double completed_mean = 0.0;
  double completed_stderr = 0.0;
  double throughput_mean = 0.0;
  double throughput_stderr = 0.0;
};

/// Scenario of repetition `rep`; shared by every scheme, sigma and beta.
Scenario sweep_scenario(const SweepSpec& spec, std::size_t rep, std::size_t blocked);

/// Rows ordered by scheme (spec order), blocked, sigma, beta, repetition,
/// independent of `threads`.
std::vector<ResultRow> run_experiment(const SweepSpec& spec);

/// Mean and standard error per (scheme, blocked, sigma, beta), in first-seen
/// order.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

std::string long_csv(const std::vector<ResultRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

/// `lo` .. `hi` inclusive with `per_decade` log-spaced points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Relative paths are placed under $RAQS_OUT_DIR when that is set.
std::filesystem::path resolve_output(const std::filesystem::path& path);

/// Throws std::runtime_error naming the path on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

/// Reads a sweep config document (topology, flows, frame, channel and sweep
/// sections, all optional; missing fields keep the built-in defaults).
SweepSpec load_sweep_config(const std::filesystem::path& path);
SweepSpec sweep_from_json(const std::string& text);

}  // namespace raqs
