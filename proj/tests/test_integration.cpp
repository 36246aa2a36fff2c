#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>

#include "raqs/feasibility.hpp"
#include "raqs/harness.hpp"
#include "raqs/oracle.hpp"

using namespace raqs;

TEST_CASE("scenario to schemes to CSV") {
  ScenarioParams p;
  const Scenario s = make_scenario(p, derive_seed(42, 0), 4);
  std::vector<ResultRow> rows;
  for (SchemeId id : kAllSchemes) {
    const SchemeRun run = run_scheme(id, s, 0.01, 0.53);
    CHECK(feasibility_check(run.result.matrix, run.paths, s.flows, s.topology).ok());
    rows.push_back({id, 4, 0.01, 0.53, 0, s.seed, run.result.metrics.completed_count,
                    run.result.metrics.system_throughput_bps});
  }
  // Baselines without relays can never serve the blocked flows.
  CHECK(rows[2].completed <= 6);
  CHECK(rows[3].completed <= 6);

  SweepSpec spec;
  spec.blocked_counts = {4};
  spec.repetitions = 1;
  spec.master_seed = 42;
  const auto swept = run_experiment(spec);
  REQUIRE(swept.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(swept[i].completed == rows[i].completed);
    CHECK(swept[i].throughput_bps == rows[i].throughput_bps);
  }
  CHECK(long_csv(swept) == long_csv(rows));

  std::istringstream csv(long_csv(swept));
  std::string line;
  std::getline(csv, line);
  std::size_t n = 0;
  while (std::getline(csv, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++n;
  }
  CHECK(n == 4);
}

TEST_CASE("a saved scenario reproduces its schedule") {
  const auto dir = std::filesystem::temp_directory_path() / "raqs_integration";
  std::filesystem::create_directories(dir);
  for (std::uint64_t k = 0; k < 10; ++k) {
    ScenarioParams p;
    const Scenario s = make_scenario(p, derive_seed(3, k), k % 11);
    const auto file = dir / ("s" + std::to_string(k) + ".json");
    save_scenario(s, file);
    const Scenario back = load_scenario(file);
    CHECK(back == s);
    for (SchemeId id : kAllSchemes) {
      CHECK(run_scheme(id, back, 0.01, 0.53).result.matrix ==
            run_scheme(id, s, 0.01, 0.53).result.matrix);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("oracle and heuristic agree on instances the heuristic solves fully") {
  const GapReport rep = oracle_gap_study(40, 3, 8, 2024);
  for (const GapRecord& r : rep.records) {
    CHECK(r.oracle_completed <= r.flows);
    if (r.heuristic_completed == r.flows) CHECK(r.gap() == 0);
  }
}
