#include "raqs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace raqs {

namespace {

// Independent streams for the topology and flow generators so that the same
// scenario seed can drive both without correlating their draws.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kTopologyStream = 0x7001;
constexpr std::uint64_t kFlowStream = 0xf10e;

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Topology::Topology(std::vector<Node> nodes, double area_side)
    : nodes_(std::move(nodes)), area_side_(area_side) {
  if (!(area_side_ > 0.0)) {
    throw std::invalid_argument("topology: area_side must be positive");
  }
  bool has_bs = false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id.index != i) {
      throw std::invalid_argument("topology: node ids must be 0..n-1 in order");
    }
    if (n.pos.x < 0.0 || n.pos.x > area_side_ || n.pos.y < 0.0 ||
        n.pos.y > area_side_) {
      throw std::invalid_argument("topology: node " + std::to_string(i) +
                                  " lies outside the area");
    }
    has_bs = has_bs || n.id.role == Role::BaseStation;
  }
  if (!has_bs) {
    throw std::invalid_argument("topology: at least one base station required");
  }
}

std::vector<NodeIndex> Topology::base_stations() const {
  std::vector<NodeIndex> out;
  for (const Node& n : nodes_) {
    if (n.id.role == Role::BaseStation) out.push_back(n.id.index);
  }
  return out;
}

std::vector<NodeIndex> Topology::relays() const {
  std::vector<NodeIndex> out;
  for (const Node& n : nodes_) {
    if (n.id.role == Role::Relay) out.push_back(n.id.index);
  }
  return out;
}

void FrameConfig::validate() const {
  if (num_slots < 1) throw std::invalid_argument("frame: K must be >= 1");
  if (!(slot_us > 0.0)) throw std::invalid_argument("frame: slot time must be > 0");
  if (!(sched_us >= 0.0)) {
    throw std::invalid_argument("frame: scheduling time must be >= 0");
  }
}

void validate_flows(const Topology& topology, std::span<const FlowSpec> flows) {
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const FlowSpec& f = flows[i];
    const std::string tag = "flow " + std::to_string(i) + ": ";
    if (f.id != i) throw std::invalid_argument(tag + "ids must be 0..F-1 in order");
    if (f.src >= topology.size() || f.dst >= topology.size()) {
      throw std::invalid_argument(tag + "endpoint not in topology");
    }
    if (f.src == f.dst) throw std::invalid_argument(tag + "src == dst");
    if (!topology.is_base_station(f.src) || !topology.is_base_station(f.dst)) {
      throw std::invalid_argument(tag + "endpoints must be base stations");
    }
    if (!(f.qos_bps > 0.0)) throw std::invalid_argument(tag + "qos must be > 0");
  }
}

Topology generate_topology(std::uint64_t seed, std::size_t n_bs,
                           double relay_mean, double area_side) {
  if (n_bs < 2) throw std::invalid_argument("generate_topology: n_bs must be >= 2");
  if (!(relay_mean >= 0.0)) {
    throw std::invalid_argument("generate_topology: relay mean must be >= 0");
  }
  if (!(area_side > 0.0)) {
    throw std::invalid_argument("generate_topology: area_side must be > 0");
  }

  auto rng = make_engine(seed, kTopologyStream);
  std::uniform_real_distribution<double> coord(0.0, area_side);

  std::size_t n_relays = 0;
  if (relay_mean > 0.0) {
    std::poisson_distribution<std::size_t> count(relay_mean);
    n_relays = count(rng);
  }

  std::vector<Node> nodes;
  nodes.reserve(n_bs + n_relays);
  for (std::size_t i = 0; i < n_bs + n_relays; ++i) {
    const Role role = i < n_bs ? Role::BaseStation : Role::Relay;
    const double x = coord(rng);
    const double y = coord(rng);
    nodes.push_back({{i, role}, {x, y}});
  }
  return Topology(std::move(nodes), area_side);
}

std::vector<FlowSpec> generate_flows(std::uint64_t seed,
                                     const Topology& topology,
                                     std::size_t n_flows,
                                     std::pair<double, double> qos_range,
                                     std::size_t n_blocked) {
  if (n_flows < 1) throw std::invalid_argument("generate_flows: n_flows must be >= 1");
  if (n_blocked > n_flows) {
    throw std::invalid_argument("generate_flows: blocked > flows");
  }
  const auto bs = topology.base_stations();
  if (bs.size() < 2) {
    throw std::invalid_argument("generate_flows: topology needs >= 2 base stations");
  }
  if (!(qos_range.first > 0.0) || qos_range.second < qos_range.first) {
    throw std::invalid_argument("generate_flows: invalid qos range");
  }

  auto rng = make_engine(seed, kFlowStream);
  std::uniform_int_distribution<std::size_t> pick(0, bs.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_other(0, bs.size() - 2);
  std::uniform_real_distribution<double> qos(qos_range.first, qos_range.second);

  std::vector<FlowSpec> flows;
  flows.reserve(n_flows);
  for (std::size_t f = 0; f < n_flows; ++f) {
    const std::size_t s = pick(rng);
    std::size_t d = pick_other(rng);
    if (d >= s) ++d;  // uniform over the other base stations
    flows.push_back({f, bs[s], bs[d], qos(rng), false});
  }

  std::vector<std::size_t> order(n_flows);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < n_blocked; ++k) flows[order[k]].blocked = true;
  return flows;
}

}  // namespace raqs
