#include "raqs/baselines.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace raqs {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::Raqs: return "raqs";
    case SchemeId::RandomRelay: return "random";
    case SchemeId::Stdma: return "stdma";
    case SchemeId::Mqis: return "mqis";
  }
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (scheme_name(id) == name) return id;
  }
  return std::nullopt;
}

PathAssignment random_relay_paths(std::uint64_t seed, const Topology& topology,
                                  std::span<const FlowSpec> flows) {
  const auto relays = topology.relays();
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x4e1au};
  std::mt19937_64 rng(seq);
  PathAssignment paths;
  paths.reserve(flows.size());
  for (const FlowSpec& f : flows) {
    if (!f.blocked) {
      paths.push_back(Path::backhaul());
    } else if (relays.empty()) {
      paths.push_back(Path::none());
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, relays.size() - 1);
      paths.push_back(Path::via(relays[pick(rng)]));
    }
  }
  return paths;
}

StdmaPass stdma_select(const LinkBudget& budget, std::span<const std::size_t> links) {
  StdmaPass pass;
  std::vector<std::size_t> kept;
  double best = 0.0;
  for (std::size_t k = 0; k < links.size(); ++k) {
    const std::size_t l = links[k];
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](std::size_t o) {
      return budget.shares_node(o, l);
    });
    if (clash) continue;
    kept.push_back(l);
    const double total = sum_rate(budget, kept);
    if (total > best) {
      best = total;
      pass.chosen.push_back(k);
      pass.sum_rates.push_back(total);
    } else {
      kept.pop_back();
    }
  }
  return pass;
}

ScheduleResult stdma_schedule(const Scenario& scenario, double /*sigma*/) {
  scenario.validate();
  const RoutedNetwork net(scenario, backhaul_only_paths(scenario.flows));
  ThroughputLedger ledger(net);
  const int slots = scenario.frame.num_slots;
  ScheduleMatrix matrix(net.flow_count(), slots);

  std::vector<std::size_t> order;
  for (std::size_t f = 0; f < net.flow_count(); ++f) {
    if (net.max_hop(f) == 1) order.push_back(f);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return net.budget().solo_rate(net.link(a, 1)) > net.budget().solo_rate(net.link(b, 1));
  });

  // The greedy pass depends only on which flows are unfinished, so it is
  // recomputed only when a flow completes.
  std::vector<std::size_t> active;
  bool stale = true;
  for (int slot = 0; slot < slots; ++slot) {
    if (stale) {
      std::vector<std::size_t> open;
      std::vector<std::size_t> links;
      for (std::size_t f : order) {
        if (!ledger.done(f)) {
          open.push_back(f);
          links.push_back(net.link(f, 1));
        }
      }
      active.clear();
      for (std::size_t k : stdma_select(net.budget(), links).chosen) {
        active.push_back(open[k]);
      }
      std::sort(active.begin(), active.end());
      stale = false;
    }
    for (std::size_t f : active) matrix.set_active(f, slot, 1);
    for (std::size_t f = 0; f < net.flow_count(); ++f) {
      if (ledger.done(f)) matrix.set_done(f, slot);
    }
    for (std::size_t f : ledger.apply_slot(active)) {
      stale = stale || ledger.done(f);
    }
  }

  ScheduleResult out;
  out.matrix = std::move(matrix);
  out.progress = ledger.progress();
  out.metrics = ledger.metrics();
  out.excluded.assign(net.flow_count(), false);
  for (std::size_t f = 0; f < net.flow_count(); ++f) out.excluded[f] = net.max_hop(f) == 0;
  return out;
}

ScheduleResult mqis_schedule(const Scenario& scenario, double sigma) {
  return run_schedule(scenario, backhaul_only_paths(scenario.flows), sigma,
                      {SelectionRule::QosFirst, false});
}

SchemeRun run_scheme(SchemeId scheme, const Scenario& scenario, double sigma,
                     double beta, ScheduleOptions options) {
  SchemeRun run;
  switch (scheme) {
    case SchemeId::Raqs: {
      const Channel channel(scenario.channel, scenario.topology,
                            blocked_pairs(scenario.flows));
      run.paths = select_relays(channel, scenario.flows, beta);
      options.rule = SelectionRule::RelayAware;
      run.result = run_schedule(scenario, run.paths, sigma, options);
      break;
    }
    case SchemeId::RandomRelay:
      run.paths = random_relay_paths(scenario.seed, scenario.topology, scenario.flows);
      options.rule = SelectionRule::RelayAware;
      run.result = run_schedule(scenario, run.paths, sigma, options);
      break;
    case SchemeId::Stdma:
      run.paths = backhaul_only_paths(scenario.flows);
      run.result = stdma_schedule(scenario, sigma);
      break;
    case SchemeId::Mqis:
      run.paths = backhaul_only_paths(scenario.flows);
      options.rule = SelectionRule::QosFirst;
      run.result = run_schedule(scenario, run.paths, sigma, options);
      break;
  }
  return run;
}

}  // namespace raqs
