#pragma once

// Schedule representation and the per-slot throughput bookkeeping shared by
// every scheduler and by the exhaustive oracle.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "raqs/channel.hpp"
#include "raqs/relay_selection.hpp"
#include "raqs/scenario.hpp"

namespace raqs {

enum class SlotState : std::int8_t { Idle = 0, Active = 1, Done = -1 };

/// One flow in one slot. `hops` is a bit set: bit 0 = hop 1 (or the backhaul
/// hop), bit 1 = hop 2. A feasible schedule sets at most one bit.
struct ScheduleCell {
  SlotState state = SlotState::Idle;
  std::uint8_t hops = 0;

  friend bool operator==(const ScheduleCell&, const ScheduleCell&) = default;
};

/// F x K grid of flow activity. Slot indices are 0-based internally.
class ScheduleMatrix {
 public:
  ScheduleMatrix() = default;
  ScheduleMatrix(std::size_t flows, int slots);

  std::size_t flows() const { return flows_; }
  int slots() const { return slots_; }

  const ScheduleCell& at(std::size_t flow, int slot) const;
  ScheduleCell& at(std::size_t flow, int slot);

  /// Marks `hop` (1 or 2) of `flow` active in `slot`.
  void set_active(std::size_t flow, int slot, int hop);
  void set_done(std::size_t flow, int slot);

  bool hop_active(std::size_t flow, int slot, int hop) const;
  /// Lowest active hop of the cell, or 0 when not active.
  int active_hop(std::size_t flow, int slot) const;

  /// One row per slot: "<slot> <c_0> ... <c_F-1>", each cell being 0, -1 or
  /// 1:<hop>. Slots are printed 1-based.
  std::string dump() const;

  friend bool operator==(const ScheduleMatrix&, const ScheduleMatrix&) = default;

 private:
  std::size_t flows_ = 0;
  int slots_ = 0;
  std::vector<ScheduleCell> cells_;
};

inline constexpr std::int64_t kUnreachableSlots =
    std::numeric_limits<std::int64_t>::max();

/// ceil(q * (Ts + K dt) / (R dt)); kUnreachableSlots when R == 0.
std::int64_t slots_needed(double qos_bps, double rate_bps, const FrameConfig& frame);

/// A scenario together with fixed paths: the hop links of every flow, their
/// link budget and interference-free slot estimates.
class RoutedNetwork {
 public:
  RoutedNetwork(const Scenario& scenario, PathAssignment paths);

  const Scenario& scenario() const { return *scenario_; }
  const PathAssignment& paths() const { return paths_; }
  const LinkBudget& budget() const { return budget_; }
  std::size_t flow_count() const { return paths_.size(); }

  int max_hop(std::size_t flow) const { return paths_[flow].max_hop(); }
  /// Link-budget index of `hop` (1-based) of `flow`.
  std::size_t link(std::size_t flow, int hop) const {
    return hop_links_[flow][static_cast<std::size_t>(hop - 1)];
  }
  /// Interference-free slot estimate of `hop` of `flow`.
  std::int64_t hop_slots(std::size_t flow, int hop) const {
    return hop_xi_[flow][static_cast<std::size_t>(hop - 1)];
  }
  /// Sum over all hops (saturating); kUnreachableSlots for dropped flows.
  std::int64_t total_slots(std::size_t flow) const;

 private:
  const Scenario* scenario_;
  PathAssignment paths_;
  std::vector<std::vector<std::size_t>> hop_links_;
  std::vector<std::vector<std::int64_t>> hop_xi_;
  LinkBudget budget_;
};

struct FlowProgress {
  int current_hop = 1;
  int max_hop = 1;
  std::vector<std::int64_t> slots_needed;  // per hop
  std::vector<double> bits;                // per hop
  std::vector<double> throughput_bps;      // per hop, bits / superframe
  bool completed = false;

  /// Throughput delivered at the destination (last hop).
  double delivered_bps() const {
    return throughput_bps.empty() ? 0.0 : throughput_bps.back();
  }
};

struct FlowMetrics {
  double delivered_bps = 0.0;
  bool completed = false;
};

struct MetricsReport {
  std::size_t completed_count = 0;
  double system_throughput_bps = 0.0;
  std::vector<FlowMetrics> per_flow;
};

/// Tracks bits and hop progression slot by slot. A hop's throughput is its
/// cumulative bits over the full superframe duration; once it reaches q_f
/// the flow moves to its next hop or completes.
class ThroughputLedger {
 public:
  explicit ThroughputLedger(const RoutedNetwork& net);

  const std::vector<FlowProgress>& progress() const { return progress_; }
  const FlowProgress& progress(std::size_t flow) const { return progress_[flow]; }
  bool done(std::size_t flow) const { return progress_[flow].completed; }
  int current_hop(std::size_t flow) const { return progress_[flow].current_hop; }
  /// Link-budget index of the flow's current hop.
  std::size_t current_link(std::size_t flow) const;

  /// Rates each flow in `active` achieves when all of them transmit their
  /// current hop together.
  std::vector<double> slot_rates(std::span<const std::size_t> active) const;

  /// Accounts one slot in which every flow of `active` transmits its current
  /// hop. Returns the flows that finished a hop in this slot.
  std::vector<std::size_t> apply_slot(std::span<const std::size_t> active);

  MetricsReport metrics() const;

 private:
  const RoutedNetwork* net_;
  double superframe_s_;
  double slot_s_;
  std::vector<FlowProgress> progress_;
};

/// Metrics for a set of progress records.
MetricsReport make_metrics(std::span<const FlowProgress> progress);

}  // namespace raqs
