#pragma once

// Checks a realized schedule against the constraints of the joint
// relay/backhaul scheduling problem.

#include <span>
#include <string>
#include <vector>

#include "raqs/accounting.hpp"

namespace raqs {

struct FeasibilityReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Verifies, slot by slot: node-sharing links never active together (relay
/// hop/relay hop, backhaul/backhaul and relay hop/backhaul); at most one hop
/// of a relay path per slot; hops of a relay path run in order (hop h+1 only
/// after hop h has transmitted, never back to hop h); only
/// the assigned path is used and dropped flows stay silent; no activity after
/// a Done cell; relays named by paths are relay nodes.
FeasibilityReport feasibility_check(const ScheduleMatrix& matrix,
                                    const PathAssignment& paths,
                                    std::span<const FlowSpec> flows,
                                    const Topology& topology);

}  // namespace raqs
