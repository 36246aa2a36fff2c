#pragma once

// Slot-by-slot concurrent scheduling of relay and backhaul paths driven by a
// contention graph that is rebuilt whenever a hop completes.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "raqs/accounting.hpp"
#include "raqs/contention.hpp"

namespace raqs {

/// Vertex ordering used when picking flows out of the contention graph.
enum class SelectionRule {
  /// Second hops first, then lowest degree, then fewest slots, then flow id.
  RelayAware,
  /// Fewest slots first, then lowest degree, then flow id.
  QosFirst,
};

struct GraphSnapshot {
  int slot = 0;  // 1-based
  std::string graph;
};

struct ScheduleResult {
  ScheduleMatrix matrix;
  std::vector<FlowProgress> progress;
  MetricsReport metrics;
  /// Flows never scheduled: no path, or slot estimate above K.
  std::vector<bool> excluded;
  /// Graph after invalid-flow removal at every rebuild, when requested.
  std::vector<GraphSnapshot> graphs;
};

struct ScheduleOptions {
  SelectionRule rule = SelectionRule::RelayAware;
  bool record_graphs = false;
};

/// Runs the scheduler on fixed paths. `sigma` is the contention threshold
/// in mW.
ScheduleResult run_schedule(const Scenario& scenario, const PathAssignment& paths,
                            double sigma, ScheduleOptions options = {});

/// Sum over `links` of eta W log2(1 + S / (N0 W + (|V| - 1) sigma)). Throws
/// std::invalid_argument if two links of the set interfere above sigma or
/// share a node.
double sum_rate_lower_bound(const LinkBudget& budget,
                            std::span<const std::size_t> links, double sigma);

/// Actual sum rate of `links` transmitting together.
double sum_rate(const LinkBudget& budget, std::span<const std::size_t> links);

}  // namespace raqs
