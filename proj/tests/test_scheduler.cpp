#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "raqs/contention.hpp"
#include "raqs/feasibility.hpp"
#include "raqs/scheduler.hpp"
#include "support.hpp"

using namespace raqs;
using namespace raqs::test;

namespace {

int first_slot(const ScheduleMatrix& m, std::size_t f, int hop) {
  for (int i = 0; i < m.slots(); ++i) {
    if (m.hop_active(f, i, hop)) return i;
  }
  return -1;
}

int last_slot(const ScheduleMatrix& m, std::size_t f, int hop) {
  for (int i = m.slots() - 1; i >= 0; --i) {
    if (m.hop_active(f, i, hop)) return i;
  }
  return -1;
}

// Flow 0 relays 0 -> 2 -> 1 with a short first hop. Flow 1 (0 -> 5) shares
// node 0 with hop 1, and hop 2 points straight at its receiver, so the two
// contend at kFixtureSigma. Flow 2 is far away.
Scenario relay_preference_fixture() {
  const Topology t = make_topology({{50, 50}, {90, 50}, relay(40, 50), {5, 95}, {5, 75}, {95, 50}});
  return make_manual(t, {flow(0, 0, 1, 1e9, true), flow(1, 0, 5, 1e9), flow(2, 3, 4, 1e9)});
}

const PathAssignment kFixturePaths{Path::via(2), Path::backhaul(), Path::backhaul()};
constexpr double kFixtureSigma = 1e-7;

}  // namespace

TEST_CASE("single backhaul flow") {
  const Scenario s = make_manual(make_topology({{25, 50}, {75, 50}}), {flow(0, 0, 1, 2e9)});
  const ScheduleResult r = run_schedule(s, {Path::backhaul()}, 0.01);
  const int xi = static_cast<int>(r.progress[0].slots_needed[0]);
  CHECK(std::abs(xi - 484) <= 2);
  for (int i = 0; i < xi; ++i) CHECK(r.matrix.hop_active(0, i, 1));
  for (int i = xi; i < s.frame.num_slots; ++i) CHECK(r.matrix.at(0, i).state == SlotState::Done);
  CHECK(r.metrics.completed_count == 1);
  CHECK(r.metrics.per_flow[0].completed);
  CHECK(r.metrics.system_throughput_bps >= 2e9);
  CHECK_FALSE(r.excluded[0]);
}

TEST_CASE("node-sharing flows never transmit together") {
  const Scenario s = make_manual(make_topology({{50, 50}, {90, 50}, {10, 50}}),
                                 {flow(0, 0, 1, 1e9), flow(1, 2, 0, 1e9)});
  const ScheduleResult r = run_schedule(s, {Path::backhaul(), Path::backhaul()}, 1e10);
  for (int i = 0; i < s.frame.num_slots; ++i) {
    CHECK_FALSE((r.matrix.at(0, i).state == SlotState::Active && r.matrix.at(1, i).state == SlotState::Active));
  }
  CHECK(r.metrics.completed_count == 2);
  // Equal demands and geometry: degree and slot ties fall to flow 0.
  CHECK(r.matrix.hop_active(0, 0, 1));
  CHECK(first_slot(r.matrix, 1, 1) == last_slot(r.matrix, 0, 1) + 1);
}

TEST_CASE("relay flow runs hop 2 strictly after hop 1") {
  const Topology t = make_topology({{10, 50}, {90, 50}, relay(50, 55)});
  const Scenario s = make_manual(t, {flow(0, 0, 1, 2e9, true)});
  const ScheduleResult r = run_schedule(s, {Path::via(2)}, 0.01);
  const int h1_end = last_slot(r.matrix, 0, 1);
  const int h2_start = first_slot(r.matrix, 0, 2);
  CHECK(h1_end + 1 == static_cast<int>(r.progress[0].slots_needed[0]));
  CHECK(h2_start == h1_end + 1);
  CHECK(r.progress[0].throughput_bps[0] >= 2e9);
  CHECK(r.progress[0].throughput_bps[1] >= 2e9);
  CHECK(r.metrics.completed_count == 1);
  CHECK(r.metrics.system_throughput_bps == r.progress[0].throughput_bps[1]);
  CHECK(feasibility_check(r.matrix, {Path::via(2)}, s.flows, s.topology).ok());
}

TEST_CASE("a second hop is preferred over fresh flows") {
  const Scenario s = relay_preference_fixture();
  const RoutedNetwork net(s, kFixturePaths);
  REQUIRE(net.hop_slots(0, 1) < net.hop_slots(1, 1));
  REQUIRE(net.hop_slots(0, 2) > net.hop_slots(1, 1));
  const Channel ch(s.channel, s.topology, blocked_pairs(s.flows));
  REQUIRE(in_contention(ch, {2, 1}, {0, 5}, kFixtureSigma));
  REQUIRE_FALSE(in_contention(ch, {2, 1}, {3, 4}, kFixtureSigma));
  REQUIRE_FALSE(in_contention(ch, {0, 5}, {3, 4}, kFixtureSigma));

  SUBCASE("relay-aware rule") {
    const ScheduleResult r = run_schedule(s, kFixturePaths, kFixtureSigma);
    CHECK(r.matrix.hop_active(0, 0, 1));
    CHECK(r.matrix.at(1, 0).state == SlotState::Idle);
    CHECK(r.matrix.hop_active(2, 0, 1));
    const int t2 = first_slot(r.matrix, 0, 2);
    REQUIRE(t2 > 0);
    CHECK(r.matrix.hop_active(0, t2 - 1, 1));
    CHECK(r.matrix.at(1, t2).state == SlotState::Idle);
    CHECK(first_slot(r.matrix, 1, 1) > last_slot(r.matrix, 0, 2));
  }
  SUBCASE("QoS-first rule picks the fresh flow") {
    ScheduleOptions o;
    o.rule = SelectionRule::QosFirst;
    const ScheduleResult r = run_schedule(s, kFixturePaths, kFixtureSigma, o);
    const int t1 = last_slot(r.matrix, 0, 1);
    CHECK(r.matrix.hop_active(1, t1 + 1, 1));
    CHECK(first_slot(r.matrix, 0, 2) > last_slot(r.matrix, 1, 1));
  }
}

TEST_CASE("graphs are recorded at rebuild slots") {
  const Scenario s = relay_preference_fixture();
  ScheduleOptions o;
  o.record_graphs = true;
  const ScheduleResult r = run_schedule(s, kFixturePaths, kFixtureSigma, o);
  REQUIRE(r.graphs.size() >= 2);
  CHECK(r.graphs[0].slot == 1);
  CHECK(r.graphs[0].graph == "0 1 2|0-1");
  for (std::size_t k = 1; k < r.graphs.size(); ++k) CHECK(r.graphs[k].slot > r.graphs[k - 1].slot);
  CHECK(run_schedule(s, kFixturePaths, kFixtureSigma).graphs.empty());
}

TEST_CASE("over-budget and pathless flows are removed") {
  const Topology t = make_topology({{0, 0}, {100, 100}, {10, 10}, {20, 10}});
  FrameConfig short_frame;
  short_frame.num_slots = 10;
  const Scenario s = make_manual(t, {flow(0, 0, 1, 3e9), flow(1, 2, 3, 1e9, true)}, short_frame);
  const ScheduleResult r = run_schedule(s, {Path::backhaul(), Path::none()}, 0.01);
  CHECK(r.excluded == std::vector<bool>{true, true});
  for (std::size_t f = 0; f < 2; ++f) {
    for (int i = 0; i < short_frame.num_slots; ++i) CHECK(r.matrix.at(f, i).state == SlotState::Idle);
  }
  CHECK(r.metrics.completed_count == 0);
  CHECK(r.metrics.system_throughput_bps == 0.0);
  CHECK_THROWS_AS(run_schedule(s, {Path::backhaul(), Path::none()}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(run_schedule(s, {Path::backhaul()}, 0.01), std::invalid_argument);
}

TEST_CASE("sum-rate lower bound") {
  const Topology t = make_topology({{0, 0}, {40, 0}, {0, 60}, {40, 60}, {90, 90}, {90, 40}});
  const Channel ch(ChannelParams{}, t);
  const LinkBudget b(ch, {{0, 1}, {2, 3}, {4, 5}, {1, 4}});
  const std::vector<std::size_t> one{2};
  CHECK(sum_rate_lower_bound(b, one, 1.0) == b.solo_rate(2));
  CHECK(sum_rate(b, one) == b.solo_rate(2));

  const std::vector<std::size_t> three{0, 1, 2};
  const double big = 1e10;
  CHECK(sum_rate(b, three) >= sum_rate_lower_bound(b, three, big));
  double solo_sum = 0.0;
  for (std::size_t i : three) solo_sum += b.solo_rate(i);
  CHECK(sum_rate(b, three) <= solo_sum);

  ChannelParams quiet;
  quiet.mui_factor = 0.0;
  const LinkBudget q(Channel(quiet, t), {{0, 1}, {2, 3}, {4, 5}});
  CHECK(sum_rate_lower_bound(q, three, 0.0) == doctest::Approx(solo_sum));

  const std::vector<std::size_t> sharing{0, 3};
  CHECK_THROWS_AS(sum_rate_lower_bound(b, sharing, big), std::invalid_argument);
  CHECK_THROWS_AS(sum_rate_lower_bound(b, three, 0.0), std::invalid_argument);
}

TEST_CASE("scheduler invariants over random scenarios") {
  ScenarioParams p;
  for (std::uint64_t k = 0; k < 60; ++k) {
    const Scenario s = make_scenario(p, derive_seed(5, k), k % 11);
    const Channel ch(s.channel, s.topology, blocked_pairs(s.flows));
    const PathAssignment paths = select_relays(ch, s.flows, 0.53);
    const double sigma = (k % 3 == 0) ? 0.01 : 1e-6;
    const ScheduleResult r = run_schedule(s, paths, sigma);
    CHECK(run_schedule(s, paths, sigma).matrix == r.matrix);

    const auto report = feasibility_check(r.matrix, paths, s.flows, s.topology);
    CHECK_MESSAGE(report.ok(), (report.ok() ? "" : report.violations.front()));

    // Completion soundness.
    for (const FlowSpec& f : s.flows) {
      const FlowProgress& fp = r.progress[f.id];
      const bool all_met = fp.max_hop > 0 && std::all_of(fp.throughput_bps.begin(), fp.throughput_bps.end(),
                                                         [&](double t) { return t >= f.qos_bps; });
      CHECK(fp.completed == all_met);
      CHECK(r.metrics.per_flow[f.id].completed == fp.completed);
    }

    // Hop 2 never forwards more than one slot beyond what hop 1 delivered.
    const RoutedNetwork net(s, paths);
    for (const FlowSpec& f : s.flows) {
      const FlowProgress& fp = r.progress[f.id];
      if (fp.max_hop != 2) continue;
      CHECK(fp.bits[1] <= fp.bits[0] + net.budget().solo_rate(net.link(f.id, 2)) * s.frame.slot_time());
    }

    // Newly selected flows are independent of each other and of ongoing ones.
    std::vector<int> hop_prev(s.flows.size(), 0);
    for (int i = 0; i < s.frame.num_slots; ++i) {
      std::vector<std::size_t> fresh, all;
      for (std::size_t f = 0; f < s.flows.size(); ++f) {
        const int h = r.matrix.active_hop(f, i);
        if (h == 0) continue;
        all.push_back(f);
        if (hop_prev[f] != h) fresh.push_back(f);
      }
      for (std::size_t a : fresh) {
        for (std::size_t b : all) {
          if (a == b) continue;
          CHECK_FALSE(in_contention(net.budget(), net.link(a, r.matrix.active_hop(a, i)),
                                    net.link(b, r.matrix.active_hop(b, i)), sigma));
        }
      }
      for (std::size_t f = 0; f < s.flows.size(); ++f) hop_prev[f] = r.matrix.active_hop(f, i);
    }
  }
}
