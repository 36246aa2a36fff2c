// Acceptance suite: runs each criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "raqs/feasibility.hpp"
#include "raqs/harness.hpp"
#include "raqs/oracle.hpp"

using namespace raqs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

SweepSpec blocked_sweep_spec() {
  SweepSpec s;
  s.blocked_counts = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  s.sigma_values = {0.01};
  s.beta_values = {0.53};
  s.repetitions = 100;
  s.master_seed = 42;
  return s;
}

const AggregateRow& find(const std::vector<AggregateRow>& agg, SchemeId id, std::size_t blocked,
                         double sigma = 0.01, double beta = 0.53) {
  for (const AggregateRow& a : agg) {
    if (a.scheme == id && a.blocked == blocked && a.sigma == sigma && a.beta == beta) return a;
  }
  throw std::logic_error("missing aggregate row");
}

void scheme_ordering(const std::vector<AggregateRow>& agg, double runtime_s) {
  std::string why;
  for (std::size_t b = 2; b <= 10; ++b) {
    const double raqs = find(agg, SchemeId::Raqs, b).completed_mean;
    const double rnd = find(agg, SchemeId::RandomRelay, b).completed_mean;
    const double mqis = find(agg, SchemeId::Mqis, b).completed_mean;
    const double stdma = find(agg, SchemeId::Stdma, b).completed_mean;
    if (raqs < rnd || rnd < mqis || rnd < stdma) {
      why += " b=" + std::to_string(b) + "(raqs " + fmt(raqs) + ", random " + fmt(rnd) +
             ", mqis " + fmt(mqis) + ", stdma " + fmt(stdma) + ")";
    }
  }
  const double r10 = find(agg, SchemeId::Raqs, 10).completed_mean;
  const double n10 = find(agg, SchemeId::RandomRelay, 10).completed_mean;
  const double margin = r10 / n10 - 1.0;
  const bool ok = why.empty() && margin >= 0.15 && runtime_s < 300.0;
  std::string detail = "ordering RAQS >= random >= {MQIS, STDMA} for blocked >= 2";
  detail += why.empty() ? " holds" : " violated at" + why;
  detail += "; completed margin at blocked=10 " + fmt(100 * margin) + "% (need >= 15%)";
  detail += "; sweep " + fmt(runtime_s) + " s";
  report(1, ok, detail);
}

void throughput_margin(const std::vector<AggregateRow>& agg) {
  const double r = find(agg, SchemeId::Raqs, 10).throughput_mean;
  const double n = find(agg, SchemeId::RandomRelay, 10).throughput_mean;
  const double margin = r / n - 1.0;
  report(2, margin >= 0.20,
         "throughput at blocked=10 RAQS " + fmt(r / 1e9) + " Gbps vs random " + fmt(n / 1e9) +
             " Gbps, margin " + fmt(100 * margin) + "% (need >= 20%)");
}

double max_pairwise_interference(const SweepSpec& spec, std::size_t blocked) {
  double worst = 0.0;
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    const Scenario s = sweep_scenario(spec, rep, blocked);
    const Channel ch(s.channel, s.topology, blocked_pairs(s.flows));
    const PathAssignment paths = select_relays(ch, s.flows, spec.beta_values.front());
    std::vector<DirectedLink> links;
    for (const FlowSpec& f : s.flows) {
      for (const DirectedLink& l : path_hops(f, paths[f.id])) links.push_back(l);
    }
    const LinkBudget budget(ch, links);
    for (std::size_t a = 0; a < budget.size(); ++a) {
      for (std::size_t b = 0; b < budget.size(); ++b) {
        if (a == b || budget.shares_node(a, b)) continue;
        worst = std::max(worst, budget.interference(a, b));
      }
    }
  }
  return worst;
}

void sigma_shape() {
  SweepSpec spec;
  spec.schemes = {SchemeId::Raqs};
  spec.blocked_counts = {5};
  spec.sigma_values = log_grid(1e-4, 1e2, 2);
  spec.beta_values = {0.53};
  spec.repetitions = 100;
  spec.master_seed = 42;
  const auto agg = aggregate(run_experiment(spec));
  std::vector<double> mean, se;
  for (double s : spec.sigma_values) {
    const AggregateRow& a = find(agg, SchemeId::Raqs, 5, s, 0.53);
    mean.push_back(a.completed_mean);
    se.push_back(a.completed_stderr);
  }
  std::string dips;
  for (std::size_t i = 1; i + 1 < mean.size(); ++i) {
    if (mean[i] + se[i] < mean[i - 1] && mean[i] + se[i] < mean[i + 1]) {
      dips += " sigma=" + fmt(spec.sigma_values[i]);
    }
  }
  const double imax = max_pairwise_interference(spec, 5);
  std::size_t first_flat = mean.size();
  for (std::size_t i = 0; i < mean.size(); ++i) {
    if (spec.sigma_values[i] > imax) {
      first_flat = i;
      break;
    }
  }
  bool flat = first_flat + 1 < mean.size();
  for (std::size_t i = first_flat + 1; i < mean.size(); ++i) {
    if (std::abs(mean[i] - mean[first_flat]) > se[first_flat]) flat = false;
  }
  std::string curve;
  for (std::size_t i = 0; i < mean.size(); ++i) curve += (i ? " " : "") + fmt(mean[i]);
  report(3, dips.empty() && flat,
         "sigma curve [" + curve + "]; " + (dips.empty() ? "no interior dip" : "dips at" + dips) +
             "; max pairwise interference " + fmt(imax) + " mW; " +
             (flat ? "flat above it" : "not flat above it"));
}

void beta_trend() {
  SweepSpec spec;
  spec.schemes = {SchemeId::Raqs};
  spec.blocked_counts = {5};
  spec.sigma_values = {0.01};
  spec.beta_values = {0.9, 0.8, 0.7, 0.6, 0.53, 0.5, 0.4, 0.3};
  spec.repetitions = 100;
  spec.master_seed = 42;
  const auto agg = aggregate(run_experiment(spec));
  std::string drops, curve;
  for (std::size_t i = 0; i < spec.beta_values.size(); ++i) {
    const AggregateRow& a = find(agg, SchemeId::Raqs, 5, 0.01, spec.beta_values[i]);
    curve += (i ? " " : "") + fmt(a.completed_mean);
    if (i == 0) continue;
    const AggregateRow& prev = find(agg, SchemeId::Raqs, 5, 0.01, spec.beta_values[i - 1]);
    if (a.completed_mean < prev.completed_mean - prev.completed_stderr) {
      drops += " beta=" + fmt(spec.beta_values[i]);
    }
  }
  const double at053 = find(agg, SchemeId::Raqs, 5, 0.01, 0.53).completed_mean;
  const double at03 = find(agg, SchemeId::Raqs, 5, 0.01, 0.3).completed_mean;
  const double gain = at03 / at053 - 1.0;
  report(4, drops.empty() && gain < 0.05,
         "beta 0.9..0.3 curve [" + curve + "]; " +
             (drops.empty() ? "no drop beyond 1 stderr" : "drops at" + drops) +
             "; gain 0.53 -> 0.3 " + fmt(100 * gain) + "% (need < 5%)");
}

void oracle_gap() {
  const auto t0 = Clock::now();
  const GapReport rep = oracle_gap_study(200, 3, 8, 42);
  const double t = seconds_since(t0);
  const bool ok = rep.records.size() >= 200 && rep.dominance_violations() == 0 &&
                  rep.mean_gap() <= 0.5 && t < 600.0;
  report(5, ok,
         std::to_string(rep.records.size()) + " tiny instances, " +
             std::to_string(rep.dominance_violations()) + " dominance violations, mean gap " +
             fmt(rep.mean_gap()) + " (need <= 0.5), max gap " + std::to_string(rep.max_gap()) +
             ", " + fmt(t) + " s");
}

void feasibility_suite() {
  ScenarioParams p;
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const Scenario s = make_scenario(p, derive_seed(42, k), k % 11);
    for (SchemeId id : kAllSchemes) {
      const SchemeRun run = run_scheme(id, s, 0.01, 0.53);
      const auto r = feasibility_check(run.result.matrix, run.paths, s.flows, s.topology);
      ++checked;
      if (!r.ok()) {
        ++bad;
        if (first.empty()) first = std::string(scheme_name(id)) + ": " + r.violations.front();
      }
    }
  }
  report(6, bad == 0,
         std::to_string(checked) + " schedules checked, " + std::to_string(bad) + " infeasible" +
             (first.empty() ? "" : " (first: " + first + ")"));
}

void formula_suite() {
  std::string why;
  const ChannelParams params;
  const AntennaPattern pat = AntennaPattern::from_beamwidth(30.0);
  const double amp = 1.6162 / std::sin(15.0 * std::numbers::pi / 180.0);
  const double g0 = amp * amp;
  const double g_half = g0 * std::pow(10.0, -0.301);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  if (rel(antenna_gain(pat, 0.0), g0) > 1e-9) why += " gain(0)";
  if (rel(antenna_gain(pat, 15.0), g_half) > 1e-9) why += " gain(bw/2)";
  const double noise_dbm = mw_to_dbm(noise_power(params));
  if (std::abs(noise_dbm - -103.21) > 0.01) why += " noise " + fmt(noise_dbm, 6) + " dBm";

  // Slot rate never rises as interferers are added.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::size_t mono_bad = 0;
  for (int g = 0; g < 1000; ++g) {
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < 10; ++i) nodes.push_back({{i, Role::BaseStation}, {u(rng), u(rng)}});
    const Channel ch(params, Topology(nodes, 100.0));
    const DirectedLink victim{0, 1};
    std::vector<DirectedLink> others;
    double last = ch.slot_rate(victim, others);
    for (std::size_t i = 2; i + 1 < 10; i += 2) {
      others.push_back({i, i + 1});
      const double r = ch.slot_rate(victim, others);
      if (r > last) ++mono_bad;
      last = r;
    }
  }
  if (mono_bad) why += " " + std::to_string(mono_bad) + " monotonicity breaks";

  // Sum-rate lower bound on every scheduled slot.
  ScenarioParams sp;
  std::size_t slots = 0, bound_bad = 0, skipped = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Scenario s = make_scenario(sp, derive_seed(7, k), k % 11);
    const SchemeRun run = run_scheme(SchemeId::Raqs, s, 0.01, 0.53);
    const RoutedNetwork net(s, run.paths);
    const ScheduleMatrix& m = run.result.matrix;
    for (int i = 0; i < m.slots(); ++i) {
      std::vector<std::size_t> active;
      for (std::size_t f = 0; f < s.flows.size(); ++f) {
        const int h = m.active_hop(f, i);
        if (h) active.push_back(net.link(f, h));
      }
      if (active.empty()) continue;
      ++slots;
      try {
        const double lb = sum_rate_lower_bound(net.budget(), active, 0.01);
        if (sum_rate(net.budget(), active) < lb * (1.0 - 1e-12)) ++bound_bad;
      } catch (const std::invalid_argument&) {
        ++skipped;
      }
    }
  }
  if (bound_bad) why += " " + std::to_string(bound_bad) + " lower-bound breaks";
  report(7, why.empty(),
         "antenna closed forms, noise " + fmt(noise_dbm, 6) + " dBm, 1000 monotonicity geometries, " +
             std::to_string(slots) + " scheduled slots checked against the lower bound (" +
             std::to_string(skipped) + " outside its precondition)" +
             (why.empty() ? "" : "; failures:" + why));
}

}  // namespace

int main() {
  const SweepSpec sweep = blocked_sweep_spec();
  const auto t0 = Clock::now();
  const auto rows = run_experiment(sweep);
  const double sweep_s = seconds_since(t0);
  const std::string csv_a = long_csv(rows);
  const auto agg = aggregate(rows);

  scheme_ordering(agg, sweep_s);
  throughput_margin(agg);
  sigma_shape();
  beta_trend();
  oracle_gap();
  feasibility_suite();
  formula_suite();

  const std::string csv_b = long_csv(run_experiment(sweep));
  report(8, csv_a == csv_b && !csv_a.empty(),
         "two full blocked-count sweeps with master seed 42 give " +
             std::string(csv_a == csv_b ? "byte-identical" : "different") + " CSV (" +
             std::to_string(csv_a.size()) + " bytes)");

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
