#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "raqs/scenario.hpp"

namespace raqs::test {

struct Site {
  double x;
  double y;
  Role role = Role::BaseStation;
};

inline Topology make_topology(const std::vector<Site>& sites, double side = 100.0) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    nodes.push_back({{i, sites[i].role}, {sites[i].x, sites[i].y}});
  }
  return Topology(std::move(nodes), side);
}

inline Site relay(double x, double y) { return {x, y, Role::Relay}; }

inline FlowSpec flow(FlowIndex id, NodeIndex src, NodeIndex dst, double qos,
                     bool blocked = false) {
  return {id, src, dst, qos, blocked};
}

inline Scenario make_manual(Topology topology, std::vector<FlowSpec> flows,
                            FrameConfig frame = {}, ChannelParams channel = {}) {
  Scenario s;
  s.topology = std::move(topology);
  s.flows = std::move(flows);
  s.frame = frame;
  s.channel = channel;
  s.validate();
  return s;
}

// Straight transcriptions of the link-model formulas, kept separate from the
// library so the library can be checked against them.
namespace ref {

inline constexpr double kPi = 3.14159265358979323846;

inline double g0_db(double bw) {
  const double a = 1.6162 / std::sin(bw / 2.0 * kPi / 180.0);
  return 10.0 * std::log10(a * a);
}

inline double gain_db(double theta, double bw) {
  if (theta <= 2.6 * bw / 2.0) {
    const double u = 2.0 * theta / bw;
    return g0_db(bw) - 3.01 * u * u;
  }
  return -0.4111 * std::log(bw) - 10.579;
}

inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

inline double rate(double signal, double noise, double interference = 0.0) {
  return 0.5 * 1200e6 * std::log2(1.0 + signal / (noise + interference));
}

inline double noise_mw() { return from_db(-134.0) / 1e6 * 1200e6; }

}  // namespace ref

}  // namespace raqs::test
