#pragma once

// Exhaustive optimum of the completed-flow objective on tiny instances, used
// to measure the heuristic's optimality gap.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "raqs/accounting.hpp"

namespace raqs {

struct TinyInstance {
  Scenario scenario;
  PathAssignment paths;
};

struct OracleLimits {
  std::size_t max_flows = 3;
  int max_slots = 8;
  std::uint64_t node_budget = 200'000'000;
};

struct OracleResult {
  ScheduleMatrix matrix;
  std::size_t completed = 0;
  double throughput_bps = 0.0;
  std::uint64_t nodes = 0;
};

/// Enumerates every per-slot set of node-disjoint current hops (each flow
/// either idles or transmits its current hop) and returns a schedule that
/// maximizes the completed-flow count, then system throughput; among exact
/// ties the first in enumeration order wins (larger concurrent sets are
/// tried first). All-idle slots are only placed at the end, which loses
/// nothing because an idle slot changes no state. Throughput is accounted by
/// ThroughputLedger, exactly as in the heuristic schedulers.
///
/// Throws std::invalid_argument when the instance exceeds `limits` and
/// std::runtime_error when the node budget runs out.
OracleResult solve_optimal(const TinyInstance& instance, OracleLimits limits = {});

/// Random tiny instance: 4 base stations, Poisson(3) relays in a 100 m
/// square, 1..max_flows flows, 2..max_slots slots, demands scaled so a few
/// slots satisfy a flow, a random number of blocked flows and relay-selected
/// paths (beta = 0.53).
TinyInstance make_tiny_instance(std::uint64_t seed, std::size_t max_flows,
                                int max_slots);

struct GapRecord {
  std::uint64_t seed = 0;
  std::size_t flows = 0;
  int slots = 0;
  std::size_t oracle_completed = 0;
  std::size_t heuristic_completed = 0;
  long gap() const {
    return static_cast<long>(oracle_completed) - static_cast<long>(heuristic_completed);
  }
};

struct GapReport {
  std::vector<GapRecord> records;
  double mean_gap() const;
  long max_gap() const;
  /// Instances where the heuristic beat the oracle (must stay zero).
  std::size_t dominance_violations() const;
};

/// Oracle versus the relay-aware heuristic on `instances` tiny instances
/// derived from `master_seed`.
GapReport oracle_gap_study(std::size_t instances, std::size_t max_flows,
                           int max_slots, std::uint64_t master_seed,
                           double sigma = 0.01);

}  // namespace raqs
