#include "raqs/accounting.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace raqs {

namespace {

std::size_t checked_slots(int slots) {
  if (slots < 0) throw std::invalid_argument("schedule matrix: negative slot count");
  return static_cast<std::size_t>(slots);
}

}  // namespace

ScheduleMatrix::ScheduleMatrix(std::size_t flows, int slots)
    : flows_(flows), slots_(slots), cells_(flows * checked_slots(slots)) {}

const ScheduleCell& ScheduleMatrix::at(std::size_t flow, int slot) const {
  if (flow >= flows_ || slot < 0 || slot >= slots_) {
    throw std::out_of_range("schedule matrix index");
  }
  return cells_[flow * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(slot)];
}

ScheduleCell& ScheduleMatrix::at(std::size_t flow, int slot) {
  return const_cast<ScheduleCell&>(std::as_const(*this).at(flow, slot));
}

void ScheduleMatrix::set_active(std::size_t flow, int slot, int hop) {
  if (hop < 1 || hop > 2) throw std::invalid_argument("schedule matrix: hop must be 1 or 2");
  ScheduleCell& c = at(flow, slot);
  c.state = SlotState::Active;
  c.hops = static_cast<std::uint8_t>(c.hops | (1u << (hop - 1)));
}

void ScheduleMatrix::set_done(std::size_t flow, int slot) {
  at(flow, slot) = {SlotState::Done, 0};
}

bool ScheduleMatrix::hop_active(std::size_t flow, int slot, int hop) const {
  const ScheduleCell& c = at(flow, slot);
  return c.state == SlotState::Active && (c.hops & (1u << (hop - 1))) != 0;
}

int ScheduleMatrix::active_hop(std::size_t flow, int slot) const {
  if (hop_active(flow, slot, 1)) return 1;
  if (hop_active(flow, slot, 2)) return 2;
  return 0;
}

std::string ScheduleMatrix::dump() const {
  std::ostringstream os;
  os << "slot";
  for (std::size_t f = 0; f < flows_; ++f) os << " f" << f;
  os << '\n';
  for (int i = 0; i < slots_; ++i) {
    os << (i + 1);
    for (std::size_t f = 0; f < flows_; ++f) {
      const ScheduleCell& c = at(f, i);
      switch (c.state) {
        case SlotState::Idle: os << " 0"; break;
        case SlotState::Done: os << " -1"; break;
        case SlotState::Active:
          os << " 1:";
          if (c.hops == 3) {
            os << "12";
          } else {
            os << active_hop(f, i);
          }
          break;
      }
    }
    os << '\n';
  }
  return os.str();
}

std::int64_t slots_needed(double qos_bps, double rate_bps, const FrameConfig& frame) {
  if (!(rate_bps > 0.0)) return kUnreachableSlots;
  const double xi = std::ceil(qos_bps * frame.superframe_duration() /
                              (rate_bps * frame.slot_time()));
  if (!(xi < 1e15)) return kUnreachableSlots;
  return static_cast<std::int64_t>(xi);
}

namespace {

std::vector<DirectedLink> all_hops(const Scenario& s, const PathAssignment& paths,
                                   std::vector<std::vector<std::size_t>>& index) {
  if (paths.size() != s.flows.size()) {
    throw std::invalid_argument("routed network: path/flow count mismatch");
  }
  std::vector<DirectedLink> links;
  index.assign(s.flows.size(), {});
  for (const FlowSpec& f : s.flows) {
    for (const DirectedLink& l : path_hops(f, paths[f.id])) {
      index[f.id].push_back(links.size());
      links.push_back(l);
    }
  }
  return links;
}

}  // namespace

RoutedNetwork::RoutedNetwork(const Scenario& scenario, PathAssignment paths)
    : scenario_(&scenario),
      paths_(std::move(paths)),
      budget_(Channel(scenario.channel, scenario.topology,
                      blocked_pairs(scenario.flows)),
              all_hops(scenario, paths_, hop_links_)) {
  for (std::size_t f = 0; f < paths_.size(); ++f) {
    const Path& p = paths_[f];
    if (p.kind == PathKind::Relay && !scenario.topology.is_relay(p.relay)) {
      throw std::invalid_argument("routed network: flow " + std::to_string(f) +
                                  " routed via a non-relay node");
    }
  }
  hop_xi_.resize(paths_.size());
  for (std::size_t f = 0; f < paths_.size(); ++f) {
    for (std::size_t link : hop_links_[f]) {
      hop_xi_[f].push_back(slots_needed(scenario.flows[f].qos_bps,
                                        budget_.solo_rate(link), scenario.frame));
    }
  }
}

std::int64_t RoutedNetwork::total_slots(std::size_t flow) const {
  if (hop_xi_[flow].empty()) return kUnreachableSlots;
  std::int64_t sum = 0;
  for (std::int64_t xi : hop_xi_[flow]) {
    if (xi == kUnreachableSlots || sum > kUnreachableSlots - xi) return kUnreachableSlots;
    sum += xi;
  }
  return sum;
}

ThroughputLedger::ThroughputLedger(const RoutedNetwork& net)
    : net_(&net),
      superframe_s_(net.scenario().frame.superframe_duration()),
      slot_s_(net.scenario().frame.slot_time()) {
  progress_.resize(net.flow_count());
  for (std::size_t f = 0; f < net.flow_count(); ++f) {
    FlowProgress& p = progress_[f];
    p.max_hop = net.max_hop(f);
    p.current_hop = 1;
    for (int h = 1; h <= p.max_hop; ++h) p.slots_needed.push_back(net.hop_slots(f, h));
    p.bits.assign(static_cast<std::size_t>(p.max_hop), 0.0);
    p.throughput_bps.assign(static_cast<std::size_t>(p.max_hop), 0.0);
  }
}

std::size_t ThroughputLedger::current_link(std::size_t flow) const {
  return net_->link(flow, progress_[flow].current_hop);
}

std::vector<double> ThroughputLedger::slot_rates(
    std::span<const std::size_t> active) const {
  std::vector<std::size_t> links;
  links.reserve(active.size());
  for (std::size_t f : active) links.push_back(current_link(f));
  std::vector<double> rates;
  rates.reserve(active.size());
  for (std::size_t link : links) rates.push_back(net_->budget().rate(link, links));
  return rates;
}

std::vector<std::size_t> ThroughputLedger::apply_slot(
    std::span<const std::size_t> active) {
  for (std::size_t f : active) {
    if (f >= progress_.size() || progress_[f].completed || progress_[f].max_hop == 0) {
      throw std::logic_error("ledger: inactive flow scheduled");
    }
  }
  const std::vector<double> rates = slot_rates(active);
  std::vector<std::size_t> finished;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const std::size_t f = active[k];
    FlowProgress& p = progress_[f];
    const auto h = static_cast<std::size_t>(p.current_hop - 1);
    p.bits[h] += rates[k] * slot_s_;
    p.throughput_bps[h] = p.bits[h] / superframe_s_;
    if (p.throughput_bps[h] >= net_->scenario().flows[f].qos_bps) {
      if (p.current_hop == p.max_hop) {
        p.completed = true;
      } else {
        ++p.current_hop;
      }
      finished.push_back(f);
    }
  }
  return finished;
}

MetricsReport ThroughputLedger::metrics() const { return make_metrics(progress_); }

MetricsReport make_metrics(std::span<const FlowProgress> progress) {
  MetricsReport m;
  m.per_flow.reserve(progress.size());
  for (const FlowProgress& p : progress) {
    const FlowMetrics fm{p.delivered_bps(), p.completed};
    m.completed_count += fm.completed ? 1 : 0;
    m.system_throughput_bps += fm.delivered_bps;
    m.per_flow.push_back(fm);
  }
  return m;
}

}  // namespace raqs
