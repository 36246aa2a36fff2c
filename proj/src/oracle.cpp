#include "raqs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "raqs/scheduler.hpp"

namespace raqs {

namespace {

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const TinyInstance& inst, OracleLimits limits)
      : net_(inst.scenario, inst.paths),
        limits_(limits),
        slots_(inst.scenario.frame.num_slots),
        superframe_s_(inst.scenario.frame.superframe_duration()),
        slot_s_(inst.scenario.frame.slot_time()) {}

  OracleResult run() {
    ThroughputLedger root(net_);
    std::vector<unsigned> choices;
    dfs(root, 0, choices);

    OracleResult out;
    out.completed = static_cast<std::size_t>(best_completed_);
    out.throughput_bps = best_throughput_;
    out.nodes = nodes_;
    out.matrix = replay(best_choices_);
    return out;
  }

 private:
  // Subsets of flows able to transmit together this slot, as bit masks,
  // largest mask first.
  std::vector<unsigned> moves(const ThroughputLedger& ledger) const {
    const std::size_t n = net_.flow_count();
    unsigned open = 0;
    for (std::size_t f = 0; f < n; ++f) {
      if (net_.max_hop(f) > 0 && !ledger.done(f)) open |= 1u << f;
    }
    std::vector<unsigned> out;
    for (unsigned mask = open; mask > 0; mask = (mask - 1) & open) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) {
        if (!(mask & (1u << a))) continue;
        for (std::size_t b = a + 1; b < n && ok; ++b) {
          if (!(mask & (1u << b))) continue;
          ok = !net_.budget().shares_node(ledger.current_link(a), ledger.current_link(b));
        }
      }
      if (ok) out.push_back(mask);
    }
    return out;
  }

  static std::vector<std::size_t> members(unsigned mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < n; ++f) {
      if (mask & (1u << f)) out.push_back(f);
    }
    return out;
  }

  // Fewest slots `flow` could still need at interference-free rates.
  std::int64_t slots_to_finish(const ThroughputLedger& ledger, std::size_t f) const {
    const FlowProgress& p = ledger.progress(f);
    const double target_bits = net_.scenario().flows[f].qos_bps * superframe_s_;
    std::int64_t total = 0;
    for (int h = p.current_hop; h <= p.max_hop; ++h) {
      const double per_slot = net_.budget().solo_rate(net_.link(f, h)) * slot_s_;
      if (!(per_slot > 0.0)) return kUnreachableSlots;
      const double need = target_bits - p.bits[static_cast<std::size_t>(h - 1)];
      total += static_cast<std::int64_t>(
          std::max(1.0, std::ceil(need / per_slot - 1e-9)));
    }
    return total;
  }

  bool prunable(const ThroughputLedger& ledger, int slot) const {
    const std::int64_t remaining = slots_ - slot;
    long completed_ub = 0;
    double throughput_ub = 0.0;
    for (std::size_t f = 0; f < net_.flow_count(); ++f) {
      const FlowProgress& p = ledger.progress(f);
      throughput_ub += p.delivered_bps();
      if (p.completed) {
        ++completed_ub;
        continue;
      }
      if (p.max_hop == 0) continue;
      if (slots_to_finish(ledger, f) <= remaining) ++completed_ub;
      const double last_rate = net_.budget().solo_rate(net_.link(f, p.max_hop));
      throughput_ub += static_cast<double>(remaining) * last_rate * slot_s_ / superframe_s_;
    }
    if (completed_ub < best_completed_) return true;
    return completed_ub == best_completed_ && throughput_ub <= best_throughput_;
  }

  void consider(const ThroughputLedger& ledger, const std::vector<unsigned>& choices) {
    const MetricsReport m = ledger.metrics();
    const long c = static_cast<long>(m.completed_count);
    if (c > best_completed_ ||
        (c == best_completed_ && m.system_throughput_bps > best_throughput_)) {
      best_completed_ = c;
      best_throughput_ = m.system_throughput_bps;
      best_choices_ = choices;
    }
  }

  void dfs(const ThroughputLedger& ledger, int slot, std::vector<unsigned>& choices) {
    if (++nodes_ > limits_.node_budget) {
      throw std::runtime_error("oracle: node budget exhausted");
    }
    if (slot == slots_) {
      consider(ledger, choices);
      return;
    }
    const auto options = moves(ledger);
    if (options.empty()) {
      consider(ledger, choices);
      return;
    }
    if (prunable(ledger, slot)) return;
    for (unsigned mask : options) {
      ThroughputLedger next = ledger;
      next.apply_slot(members(mask, net_.flow_count()));
      choices.push_back(mask);
      dfs(next, slot + 1, choices);
      choices.pop_back();
    }
    // Idle here means idle for the rest of the frame.
    consider(ledger, choices);
  }

  ScheduleMatrix replay(const std::vector<unsigned>& choices) const {
    ThroughputLedger ledger(net_);
    ScheduleMatrix m(net_.flow_count(), slots_);
    for (int slot = 0; slot < slots_; ++slot) {
      for (std::size_t f = 0; f < net_.flow_count(); ++f) {
        if (ledger.done(f)) m.set_done(f, slot);
      }
      if (static_cast<std::size_t>(slot) >= choices.size()) continue;
      const auto active = members(choices[static_cast<std::size_t>(slot)], net_.flow_count());
      for (std::size_t f : active) m.set_active(f, slot, ledger.current_hop(f));
      ledger.apply_slot(active);
    }
    return m;
  }

  RoutedNetwork net_;
  OracleLimits limits_;
  int slots_;
  double superframe_s_;
  double slot_s_;
  std::uint64_t nodes_ = 0;
  long best_completed_ = -1;
  double best_throughput_ = -std::numeric_limits<double>::infinity();
  std::vector<unsigned> best_choices_;
};

}  // namespace

OracleResult solve_optimal(const TinyInstance& instance, OracleLimits limits) {
  instance.scenario.validate();
  if (instance.scenario.flows.size() > limits.max_flows ||
      instance.scenario.frame.num_slots > limits.max_slots) {
    throw std::invalid_argument("solve_optimal: instance exceeds the size budget");
  }
  if (limits.max_flows > 16) {
    throw std::invalid_argument("solve_optimal: at most 16 flows supported");
  }
  return ExhaustiveSearch(instance, limits).run();
}

TinyInstance make_tiny_instance(std::uint64_t seed, std::size_t max_flows,
                                int max_slots) {
  if (max_flows < 1 || max_slots < 2) {
    throw std::invalid_argument("make_tiny_instance: need >= 1 flow and >= 2 slots");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x71e7u};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> flow_count(1, max_flows);
  std::uniform_int_distribution<int> slot_count(2, max_slots);

  ScenarioParams params;
  params.n_bs = 4;
  params.relay_mean = 3.0;
  params.area_side = 100.0;
  params.n_flows = flow_count(rng);
  params.frame.num_slots = slot_count(rng);
  // At default rates one slot carries roughly (R dt / (Ts + K dt)) of
  // throughput; aim demands at 1..K slots worth.
  const double frame_s = params.frame.superframe_duration();
  const double per_slot = 12e9 * params.frame.slot_time() / frame_s;
  params.qos_min_bps = 0.5 * per_slot;
  params.qos_max_bps = 0.6 * per_slot * params.frame.num_slots;
  std::uniform_int_distribution<std::size_t> blocked(0, params.n_flows);

  TinyInstance inst;
  inst.scenario = make_scenario(params, seed, blocked(rng));
  const Channel channel(inst.scenario.channel, inst.scenario.topology,
                        blocked_pairs(inst.scenario.flows));
  inst.paths = select_relays(channel, inst.scenario.flows, 0.53);
  return inst;
}

double GapReport::mean_gap() const {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const GapRecord& r : records) sum += static_cast<double>(r.gap());
  return sum / static_cast<double>(records.size());
}

long GapReport::max_gap() const {
  long m = 0;
  for (const GapRecord& r : records) m = std::max(m, r.gap());
  return m;
}

std::size_t GapReport::dominance_violations() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const GapRecord& r) { return r.gap() < 0; }));
}

GapReport oracle_gap_study(std::size_t instances, std::size_t max_flows,
                           int max_slots, std::uint64_t master_seed, double sigma) {
  GapReport report;
  OracleLimits limits;
  limits.max_flows = max_flows;
  limits.max_slots = max_slots;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::uint64_t seed = derive_seed(master_seed, k);
    const TinyInstance inst = make_tiny_instance(seed, max_flows, max_slots);
    const OracleResult best = solve_optimal(inst, limits);
    const ScheduleResult heuristic = run_schedule(inst.scenario, inst.paths, sigma);
    report.records.push_back({seed, inst.scenario.flows.size(),
                              inst.scenario.frame.num_slots, best.completed,
                              heuristic.metrics.completed_count});
  }
  return report;
}

}  // namespace raqs
