#pragma once

// Relay selection for blocked flows: lens-region candidates, time-ratio
// filter, best pick and repeated-relay elimination.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raqs/channel.hpp"
#include "raqs/model.hpp"

namespace raqs {

enum class PathKind { Backhaul, Relay, None };

struct Path {
  PathKind kind = PathKind::Backhaul;
  NodeIndex relay = 0;  // meaningful only for PathKind::Relay

  static Path backhaul() { return {PathKind::Backhaul, 0}; }
  static Path via(NodeIndex relay) { return {PathKind::Relay, relay}; }
  static Path none() { return {PathKind::None, 0}; }

  /// Number of hops: 1 for backhaul, 2 for relay, 0 when the flow is dropped.
  int max_hop() const;
  std::string to_string() const;  // "backhaul" | "relay:<node>" | "none"

  friend bool operator==(const Path&, const Path&) = default;
};

/// Indexed by flow id.
using PathAssignment = std::vector<Path>;

/// Directed hops of `flow` along `path`, in transmission order.
std::vector<DirectedLink> path_hops(const FlowSpec& flow, const Path& path);

/// Backhaul for unblocked flows, none for blocked ones.
PathAssignment backhaul_only_paths(std::span<const FlowSpec> flows);

/// Relays strictly inside both disks of radius d(src, dst) centred on the
/// flow endpoints, ascending by id.
std::vector<NodeIndex> lens_candidates(const Topology& topology,
                                       const FlowSpec& flow);

/// (1/Rb) / (1/R1 + 1/R2) with interference-free rates; Rb ignores the
/// blockage. Throws std::invalid_argument if a rate is zero or `relay` is
/// not a relay node.
double time_ratio(const Channel& channel, const FlowSpec& flow, NodeIndex relay);

struct RelayCandidate {
  NodeIndex relay = 0;
  double tr = 0.0;

  friend bool operator==(const RelayCandidate&, const RelayCandidate&) = default;
};

struct FlowCandidates {
  std::vector<NodeIndex> can1;
  std::vector<RelayCandidate> can2;  // tr > beta, tr descending, id ascending
  std::optional<NodeIndex> can3;
};

/// Indexed by flow id; unblocked flows carry empty sets.
using CandidateSets = std::vector<FlowCandidates>;

CandidateSets build_candidates(const Channel& channel,
                               std::span<const FlowSpec> flows, double beta);

/// Resolves relays claimed by more than one flow so that every relay serves
/// at most one flow. Blocked flows whose candidates run out get Path::none().
PathAssignment eliminate_repeats(const CandidateSets& candidates,
                                 std::span<const FlowSpec> flows);

/// build_candidates followed by eliminate_repeats.
PathAssignment select_relays(const Channel& channel,
                             std::span<const FlowSpec> flows, double beta);

}  // namespace raqs
