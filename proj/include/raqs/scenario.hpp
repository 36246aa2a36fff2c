#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "raqs/channel.hpp"
#include "raqs/model.hpp"

namespace raqs {

/// One fully specified simulation input. Immutable once built.
struct Scenario {
  Topology topology;
  std::vector<FlowSpec> flows;
  FrameConfig frame;
  ChannelParams channel;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on any broken cross-reference.
  void validate() const;
  std::size_t blocked_count() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Knobs of the random scenario generator.
struct ScenarioParams {
  std::size_t n_bs = 10;
  double relay_mean = 30.0;
  double area_side = 100.0;
  std::size_t n_flows = 10;
  double qos_min_bps = 1e9;
  double qos_max_bps = 3e9;
  FrameConfig frame;
  ChannelParams channel;
};

Scenario make_scenario(const ScenarioParams& params, std::uint64_t seed,
                       std::size_t n_blocked);

// JSON document form. Keys: area_side, nodes[{id,role,x,y}],
// flows[{id,src,dst,qos_bps,blocked}], frame{K,slot_us,sched_us}, seed and an
// optional channel object. Doubles are printed shortest-round-trip, so
// to_json/from_json is lossless.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace raqs
