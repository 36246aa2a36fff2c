#include <doctest.h>

#include "raqs/feasibility.hpp"
#include "support.hpp"

using namespace raqs;
using namespace raqs::test;

namespace {

struct Fixture {
  Topology topology = make_topology({{0, 0}, {50, 0}, relay(25, 10), {0, 50}, {50, 50}, relay(25, 60)});
  std::vector<FlowSpec> flows{flow(0, 0, 1, 1e9, true), flow(1, 3, 4, 1e9), flow(2, 0, 4, 1e9)};
  PathAssignment paths{Path::via(2), Path::backhaul(), Path::backhaul()};

  FeasibilityReport check(const ScheduleMatrix& m) const {
    return feasibility_check(m, paths, flows, topology);
  }
};

bool mentions(const FeasibilityReport& r, const std::string& needle) {
  for (const auto& v : r.violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("feasible hand-built schedule") {
  Fixture fx;
  ScheduleMatrix m(3, 6);
  m.set_active(0, 0, 1);
  m.set_active(1, 0, 1);
  m.set_active(0, 1, 1);
  m.set_active(0, 2, 2);
  m.set_active(2, 3, 1);
  m.set_done(0, 3);
  m.set_done(0, 4);
  CHECK(fx.check(m).ok());
}

TEST_CASE("each constraint is reported") {
  Fixture fx;
  SUBCASE("both hops in one slot") {
    ScheduleMatrix m(3, 2);
    m.set_active(0, 0, 1);
    m.set_active(0, 0, 2);
    CHECK(mentions(fx.check(m), "two hops"));
  }
  SUBCASE("hop 2 before hop 1") {
    ScheduleMatrix m(3, 2);
    m.set_active(0, 0, 2);
    m.set_active(0, 1, 1);
    const auto r = fx.check(m);
    CHECK(mentions(r, "hop 2 scheduled ahead of hop 1"));
    CHECK(mentions(r, "hop 1 resumes after hop 2"));
  }
  SUBCASE("hop 1 resumes after hop 2") {
    ScheduleMatrix m(3, 3);
    m.set_active(0, 0, 1);
    m.set_active(0, 1, 2);
    m.set_active(0, 2, 1);
    CHECK(mentions(fx.check(m), "resumes"));
  }
  SUBCASE("node sharing across flows") {
    ScheduleMatrix m(3, 1);
    m.set_active(0, 0, 1);
    m.set_active(2, 0, 1);
    CHECK(mentions(fx.check(m), "shares a node with flow 2"));
  }
  SUBCASE("relay hop meets backhaul at the destination") {
    fx.flows[2] = flow(2, 3, 1, 1e9);
    ScheduleMatrix m(3, 2);
    m.set_active(0, 0, 1);
    m.set_active(0, 1, 2);
    m.set_active(2, 1, 1);
    CHECK(mentions(fx.check(m), "shares a node"));
  }
  SUBCASE("activity after done") {
    ScheduleMatrix m(3, 3);
    m.set_active(1, 0, 1);
    m.set_done(1, 1);
    m.set_active(1, 2, 1);
    CHECK(mentions(fx.check(m), "active after done"));
  }
  SUBCASE("dropped flow transmits") {
    fx.paths[0] = Path::none();
    ScheduleMatrix m(3, 1);
    m.set_active(0, 0, 1);
    CHECK(mentions(fx.check(m), "without a path"));
  }
  SUBCASE("second hop on a one-hop path") {
    ScheduleMatrix m(3, 2);
    m.set_active(1, 0, 1);
    m.set_active(1, 1, 2);
    CHECK(mentions(fx.check(m), "second hop on a one-hop path"));
  }
  SUBCASE("blocked flow on its backhaul") {
    fx.paths[0] = Path::backhaul();
    ScheduleMatrix m(3, 1);
    m.set_active(0, 0, 1);
    CHECK(mentions(fx.check(m), "blocked flow uses its backhaul"));
  }
  SUBCASE("active cell without a hop") {
    ScheduleMatrix m(3, 1);
    m.at(1, 0).state = SlotState::Active;
    CHECK(mentions(fx.check(m), "without a hop"));
  }
  SUBCASE("path through a base station") {
    fx.paths[0] = Path::via(3);
    CHECK(mentions(fx.check(ScheduleMatrix(3, 1)), "non-relay"));
  }
  SUBCASE("dimension mismatch") {
    CHECK_FALSE(fx.check(ScheduleMatrix(2, 1)).ok());
  }
}
