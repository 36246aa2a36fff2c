#include "raqs/feasibility.hpp"

#include <algorithm>
#include <sstream>

namespace raqs {

namespace {

std::string where(int slot, std::size_t flow) {
  std::ostringstream os;
  os << "slot " << (slot + 1) << " flow " << flow << ": ";
  return os.str();
}

}  // namespace

FeasibilityReport feasibility_check(const ScheduleMatrix& matrix,
                                    const PathAssignment& paths,
                                    std::span<const FlowSpec> flows,
                                    const Topology& topology) {
  FeasibilityReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (matrix.flows() != flows.size() || paths.size() != flows.size()) {
    fail("dimension mismatch between matrix, paths and flows");
    return report;
  }
  for (std::size_t f = 0; f < paths.size(); ++f) {
    if (paths[f].kind == PathKind::Relay &&
        (paths[f].relay >= topology.size() || !topology.is_relay(paths[f].relay))) {
      fail("flow " + std::to_string(f) + ": path names a non-relay node");
      return report;
    }
  }

  std::vector<unsigned> last_hop(flows.size(), 0);
  std::vector<bool> seen_done(flows.size(), false);

  for (int i = 0; i < matrix.slots(); ++i) {
    std::vector<std::pair<std::size_t, DirectedLink>> live;
    for (std::size_t f = 0; f < flows.size(); ++f) {
      const ScheduleCell& c = matrix.at(f, i);
      if (c.state == SlotState::Done) {
        seen_done[f] = true;
        continue;
      }
      if (c.state != SlotState::Active) continue;
      if (seen_done[f]) fail(where(i, f) + "active after done");

      const int max_hop = paths[f].max_hop();
      if (max_hop == 0) {
        fail(where(i, f) + "flow without a path transmits");
        continue;
      }
      if (c.hops == 0) fail(where(i, f) + "active cell without a hop");
      if ((c.hops & 1u) && (c.hops & 2u)) {
        fail(where(i, f) + "two hops of one path in the same slot");
      }
      if ((c.hops & 2u) && max_hop < 2) {
        fail(where(i, f) + "second hop on a one-hop path");
      }
      if (flows[f].blocked && paths[f].kind == PathKind::Backhaul) {
        fail(where(i, f) + "blocked flow uses its backhaul link");
      }
      const auto hops = path_hops(flows[f], paths[f]);
      for (int h = 1; h <= max_hop; ++h) {
        if (c.hops & (1u << (h - 1))) live.emplace_back(f, hops[h - 1]);
      }
      // A hop may start only after the previous hop has transmitted, and an
      // earlier hop never resumes once a later one has started.
      for (unsigned h = 1; h <= static_cast<unsigned>(max_hop); ++h) {
        if (!(c.hops & (1u << (h - 1)))) continue;
        if (h < last_hop[f]) {
          fail(where(i, f) + "hop " + std::to_string(h) + " resumes after hop " +
               std::to_string(last_hop[f]));
        } else if (h > last_hop[f] + 1) {
          fail(where(i, f) + "hop " + std::to_string(h) + " scheduled ahead of hop " +
               std::to_string(h - 1));
        }
        last_hop[f] = std::max(last_hop[f], h);
      }
    }
    for (std::size_t a = 0; a < live.size(); ++a) {
      for (std::size_t b = a + 1; b < live.size(); ++b) {
        if (live[a].first == live[b].first) continue;  // same-path case above
        if (live[a].second.shares_node(live[b].second)) {
          fail(where(i, live[a].first) + "shares a node with flow " +
               std::to_string(live[b].first));
        }
      }
    }
  }
  return report;
}

}  // namespace raqs
