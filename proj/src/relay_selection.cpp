#include "raqs/relay_selection.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace raqs {

int Path::max_hop() const {
  switch (kind) {
    case PathKind::Backhaul: return 1;
    case PathKind::Relay: return 2;
    case PathKind::None: return 0;
  }
  return 0;
}

std::string Path::to_string() const {
  switch (kind) {
    case PathKind::Backhaul: return "backhaul";
    case PathKind::Relay: return "relay:" + std::to_string(relay);
    case PathKind::None: return "none";
  }
  return "none";
}

std::vector<DirectedLink> path_hops(const FlowSpec& flow, const Path& path) {
  switch (path.kind) {
    case PathKind::Backhaul: return {{flow.src, flow.dst}};
    case PathKind::Relay: return {{flow.src, path.relay}, {path.relay, flow.dst}};
    case PathKind::None: return {};
  }
  return {};
}

PathAssignment backhaul_only_paths(std::span<const FlowSpec> flows) {
  PathAssignment out;
  out.reserve(flows.size());
  for (const FlowSpec& f : flows) {
    out.push_back(f.blocked ? Path::none() : Path::backhaul());
  }
  return out;
}

std::vector<NodeIndex> lens_candidates(const Topology& topology,
                                       const FlowSpec& flow) {
  const double d = topology.distance(flow.src, flow.dst);
  std::vector<NodeIndex> out;
  for (NodeIndex r : topology.relays()) {
    if (topology.distance(r, flow.src) < d && topology.distance(r, flow.dst) < d) {
      out.push_back(r);
    }
  }
  return out;
}

double time_ratio(const Channel& channel, const FlowSpec& flow, NodeIndex relay) {
  if (!channel.topology().is_relay(relay)) {
    throw std::invalid_argument("time_ratio: node is not a relay");
  }
  const ChannelParams& p = channel.params();
  const double rb =
      shannon_rate(p, channel.unobstructed_signal_power({flow.src, flow.dst}), 0.0);
  const double r1 = channel.link_rate({flow.src, relay});
  const double r2 = channel.link_rate({relay, flow.dst});
  if (!(rb > 0.0 && r1 > 0.0 && r2 > 0.0)) {
    throw std::invalid_argument("time_ratio: zero link rate");
  }
  return (1.0 / rb) / (1.0 / r1 + 1.0 / r2);
}

CandidateSets build_candidates(const Channel& channel,
                               std::span<const FlowSpec> flows, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("build_candidates: beta must be > 0");
  CandidateSets sets(flows.size());
  for (const FlowSpec& f : flows) {
    if (!f.blocked) continue;
    FlowCandidates& c = sets[f.id];
    c.can1 = lens_candidates(channel.topology(), f);
    for (NodeIndex r : c.can1) {
      const double tr = time_ratio(channel, f, r);
      if (tr > beta) c.can2.push_back({r, tr});
    }
    std::stable_sort(c.can2.begin(), c.can2.end(),
                     [](const RelayCandidate& a, const RelayCandidate& b) {
                       return a.tr > b.tr;
                     });
    if (!c.can2.empty()) c.can3 = c.can2.front().relay;
  }
  return sets;
}

namespace {

class RepeatResolver {
 public:
  RepeatResolver(const CandidateSets& candidates, std::span<const FlowSpec> flows)
      : paths_(flows.size(), Path::backhaul()) {
    can2_.resize(flows.size());
    for (const FlowSpec& f : flows) {
      if (!f.blocked) continue;
      can2_[f.id] = candidates.at(f.id).can2;
      const auto& can3 = candidates.at(f.id).can3;
      paths_[f.id] = can3 ? Path::via(*can3) : Path::none();
    }
  }

  PathAssignment run() {
    while (auto clash = lowest_clash()) {
      // Follow the chain of displaced flows before rescanning.
      std::optional<Clash> next = clash;
      while (next) next = resolve(next->first, next->second, next->relay);
    }
    return paths_;
  }

 private:
  struct Clash {
    FlowIndex first;
    FlowIndex second;
    NodeIndex relay;
  };

  std::vector<FlowIndex> holders(NodeIndex r) const {
    std::vector<FlowIndex> out;
    for (FlowIndex f = 0; f < paths_.size(); ++f) {
      if (paths_[f].kind == PathKind::Relay && paths_[f].relay == r) out.push_back(f);
    }
    return out;
  }

  std::optional<Clash> lowest_clash() const {
    std::map<NodeIndex, std::vector<FlowIndex>> by_relay;
    for (FlowIndex f = 0; f < paths_.size(); ++f) {
      if (paths_[f].kind == PathKind::Relay) by_relay[paths_[f].relay].push_back(f);
    }
    for (const auto& [r, fs] : by_relay) {
      if (fs.size() >= 2) return Clash{fs[0], fs[1], r};
    }
    return std::nullopt;
  }

  double tr_of(FlowIndex f, NodeIndex r) const {
    for (const RelayCandidate& c : can2_[f]) {
      if (c.relay == r) return c.tr;
    }
    throw std::logic_error("eliminate_repeats: held relay missing from can2");
  }

  // Higher TR for the contested relay wins; ties go to the lower flow id.
  std::pair<FlowIndex, FlowIndex> by_tr(FlowIndex a, FlowIndex b, NodeIndex r) const {
    const double ta = tr_of(a, r);
    const double tb = tr_of(b, r);
    if (ta > tb || (ta == tb && a < b)) return {a, b};
    return {b, a};
  }

  std::optional<Clash> resolve(FlowIndex f1, FlowIndex f2, NodeIndex r) {
    const std::size_t n1 = can2_[f1].size();
    const std::size_t n2 = can2_[f2].size();
    FlowIndex winner = f1;
    FlowIndex loser = f2;
    if (n1 == 1 && n2 == 1) {
      std::tie(winner, loser) = by_tr(f1, f2, r);
    } else if (n1 == 1) {
      winner = f1;
      loser = f2;
    } else if (n2 == 1) {
      winner = f2;
      loser = f1;
    } else {
      std::tie(winner, loser) = by_tr(f1, f2, r);
    }

    paths_[winner] = Path::via(r);
    auto& pool = can2_[loser];
    std::erase_if(pool, [r](const RelayCandidate& c) { return c.relay == r; });
    if (pool.empty()) {
      paths_[loser] = Path::none();
      return std::nullopt;
    }
    const NodeIndex next = pool.front().relay;
    paths_[loser] = Path::via(next);
    for (FlowIndex other : holders(next)) {
      if (other != loser) return Clash{other, loser, next};
    }
    return std::nullopt;
  }

  PathAssignment paths_;
  std::vector<std::vector<RelayCandidate>> can2_;
};

}  // namespace

PathAssignment eliminate_repeats(const CandidateSets& candidates,
                                 std::span<const FlowSpec> flows) {
  if (candidates.size() != flows.size()) {
    throw std::invalid_argument("eliminate_repeats: candidate/flow count mismatch");
  }
  return RepeatResolver(candidates, flows).run();
}

PathAssignment select_relays(const Channel& channel,
                             std::span<const FlowSpec> flows, double beta) {
  return eliminate_repeats(build_candidates(channel, flows, beta), flows);
}

}  // namespace raqs
