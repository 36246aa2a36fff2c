#pragma once

// Comparison schemes: random relay selection, throughput-greedy STDMA and a
// QoS-first independent-set scheduler (MQIS). The last two give blocked flows
// no path.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raqs/scheduler.hpp"

namespace raqs {

enum class SchemeId { Raqs, RandomRelay, Stdma, Mqis };

std::string_view scheme_name(SchemeId id);
/// Accepts raqs, random, stdma and mqis (case-sensitive).
std::optional<SchemeId> parse_scheme(std::string_view name);
inline constexpr SchemeId kAllSchemes[] = {SchemeId::Raqs, SchemeId::RandomRelay,
                                           SchemeId::Stdma, SchemeId::Mqis};

/// Every blocked flow gets a relay drawn uniformly from all relays,
/// independently (two flows may share one). No relays: blocked flows get none.
PathAssignment random_relay_paths(std::uint64_t seed, const Topology& topology,
                                  std::span<const FlowSpec> flows);

/// Outcome of one greedy STDMA pass over candidate links.
struct StdmaPass {
  std::vector<std::size_t> chosen;  // indices into the candidate list
  std::vector<double> sum_rates;    // sum rate after each accepted addition
};

/// Walks `links` in order and keeps a link iff it shares no node with the
/// kept ones and strictly raises the sum rate.
StdmaPass stdma_select(const LinkBudget& budget, std::span<const std::size_t> links);

/// Per slot, unfinished backhaul flows are offered to stdma_select in
/// descending interference-free rate order. `sigma` is unused by the
/// algorithm and only kept for a uniform scheme interface.
ScheduleResult stdma_schedule(const Scenario& scenario, double sigma);

/// Slot mechanics of run_schedule on backhaul-only paths with the QoS-first
/// selection rule.
ScheduleResult mqis_schedule(const Scenario& scenario, double sigma);

struct SchemeRun {
  PathAssignment paths;
  ScheduleResult result;
};

/// Runs one scheme end to end. `beta` only matters for RAQS; the random
/// relay draw is seeded from the scenario seed.
SchemeRun run_scheme(SchemeId scheme, const Scenario& scenario, double sigma,
                     double beta, ScheduleOptions options = {});

}  // namespace raqs
