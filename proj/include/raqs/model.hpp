#pragma once

// Physical scenario: node placement, frame timing, flows and blockage.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace raqs {

enum class Role { BaseStation, Relay };

using NodeIndex = std::size_t;
using FlowIndex = std::size_t;

struct NodeId {
  NodeIndex index = 0;
  Role role = Role::BaseStation;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

struct Node {
  NodeId id;
  Position pos;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Node layout of one backhaul mesh. Node ids equal their index in `nodes`.
class Topology {
 public:
  Topology() = default;
  /// Throws std::invalid_argument when ids are not 0..n-1 in order, no
  /// base station exists, or a position lies outside [0, area_side]^2.
  Topology(std::vector<Node> nodes, double area_side);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }
  double area_side() const { return area_side_; }

  bool is_base_station(NodeIndex i) const {
    return node(i).id.role == Role::BaseStation;
  }
  bool is_relay(NodeIndex i) const { return node(i).id.role == Role::Relay; }

  std::vector<NodeIndex> base_stations() const;
  std::vector<NodeIndex> relays() const;

  double distance(NodeIndex a, NodeIndex b) const {
    return raqs::distance(node(a).pos, node(b).pos);
  }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<Node> nodes_;
  double area_side_ = 0.0;
};

/// Superframe timing. Durations are held in microseconds, the unit of the
/// config document, so a document round-trip is exact.
struct FrameConfig {
  int num_slots = 3000;
  double slot_us = 18.0;
  double sched_us = 850.0;

  double slot_time() const { return slot_us * 1e-6; }
  double scheduling_time() const { return sched_us * 1e-6; }
  double superframe_duration() const {
    return scheduling_time() + num_slots * slot_time();
  }

  /// Throws std::invalid_argument on K < 1, slot <= 0 or scheduling time < 0.
  void validate() const;

  friend bool operator==(const FrameConfig&, const FrameConfig&) = default;
};

struct FlowSpec {
  FlowIndex id = 0;
  NodeIndex src = 0;
  NodeIndex dst = 0;
  double qos_bps = 0.0;
  bool blocked = false;

  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

/// Throws std::invalid_argument unless every flow connects two distinct base
/// stations of `topology` with a positive demand and ids are 0..F-1.
void validate_flows(const Topology& topology, std::span<const FlowSpec> flows);

/// Seed of repetition `index` under `master` (splitmix64 of the pair).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Base stations uniform i.i.d. in the square; relay count ~ Poisson(relay_mean)
/// with uniform i.i.d. positions. Pure function of its arguments.
Topology generate_topology(std::uint64_t seed, std::size_t n_bs,
                           double relay_mean, double area_side);

/// Endpoints drawn uniformly among base stations (src != dst), demand uniform
/// in `qos_range`, exactly `n_blocked` flows marked blocked. Given the same
/// seed the endpoints and demands do not depend on `n_blocked`, and the blocked
/// sets are nested as `n_blocked` grows.
std::vector<FlowSpec> generate_flows(std::uint64_t seed,
                                     const Topology& topology,
                                     std::size_t n_flows,
                                     std::pair<double, double> qos_range,
                                     std::size_t n_blocked);

}  // namespace raqs
