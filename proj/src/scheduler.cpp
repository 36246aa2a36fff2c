#include "raqs/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace raqs {

namespace {

class SlotScheduler {
 public:
  SlotScheduler(const Scenario& scenario, const PathAssignment& paths,
                double sigma, ScheduleOptions options)
      : net_(scenario, paths),
        ledger_(net_),
        sigma_(sigma),
        options_(options),
        slots_(scenario.frame.num_slots),
        excluded_(net_.flow_count(), false) {
    for (std::size_t f = 0; f < net_.flow_count(); ++f) {
      excluded_[f] = net_.max_hop(f) == 0 || net_.total_slots(f) > slots_;
    }
  }

  ScheduleResult run() {
    ScheduleMatrix matrix(net_.flow_count(), slots_);
    std::vector<std::size_t> active;
    std::vector<std::size_t> finished;  // flows that finished a hop last slot
    std::vector<GraphSnapshot> graphs;

    for (int slot = 0; slot < slots_; ++slot) {
      if (slot == 0 || !finished.empty()) {
        active = reselect(active, finished, slot, graphs);
      }
      for (std::size_t f : active) matrix.set_active(f, slot, ledger_.current_hop(f));
      for (std::size_t f = 0; f < net_.flow_count(); ++f) {
        if (ledger_.done(f)) matrix.set_done(f, slot);
      }
      finished = ledger_.apply_slot(active);
    }

    ScheduleResult out;
    out.matrix = std::move(matrix);
    out.progress = ledger_.progress();
    out.metrics = ledger_.metrics();
    out.excluded = excluded_;
    out.graphs = std::move(graphs);
    return out;
  }

 private:
  std::vector<std::size_t> reselect(const std::vector<std::size_t>& previous,
                                    const std::vector<std::size_t>& finished,
                                    int slot, std::vector<GraphSnapshot>& graphs) {
    // Ongoing: active last slot and still working on the same hop.
    std::vector<std::size_t> ongoing;
    for (std::size_t f : previous) {
      if (std::find(finished.begin(), finished.end(), f) == finished.end()) {
        ongoing.push_back(f);
      }
    }

    std::vector<std::size_t> vertices;
    for (std::size_t f = 0; f < net_.flow_count(); ++f) {
      if (!excluded_[f] && !ledger_.done(f)) vertices.push_back(f);
    }
    const LinkBudget& budget = net_.budget();
    ContentionGraph graph(vertices, sigma_, [&](std::size_t i, std::size_t j) {
      return in_contention(budget, ledger_.current_link(vertices[i]),
                           ledger_.current_link(vertices[j]), sigma_);
    });
    for (std::size_t f : ongoing) {
      if (graph.contains(f)) graph.remove_closed_neighborhood(f);
    }
    if (options_.record_graphs) graphs.push_back({slot + 1, graph.to_string()});

    std::vector<std::size_t> chosen = ongoing;
    while (!graph.empty()) {
      const std::size_t f = pick(graph);
      chosen.push_back(f);
      graph.remove_closed_neighborhood(f);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  std::size_t pick(const ContentionGraph& graph) const {
    const auto key = [&](std::size_t f) {
      const int hop = ledger_.current_hop(f);
      const std::int64_t xi = net_.hop_slots(f, hop);
      const std::size_t degree = graph.degree(f);
      if (options_.rule == SelectionRule::RelayAware) {
        return std::make_tuple(std::int64_t{hop == 2 ? 0 : 1},
                               static_cast<std::int64_t>(degree), xi, f);
      }
      return std::make_tuple(xi, static_cast<std::int64_t>(degree),
                             std::int64_t{0}, f);
    };
    const auto vs = graph.vertices();
    return *std::min_element(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) {
      return key(a) < key(b);
    });
  }

  RoutedNetwork net_;
  ThroughputLedger ledger_;
  double sigma_;
  ScheduleOptions options_;
  int slots_;
  std::vector<bool> excluded_;
};

}  // namespace

ScheduleResult run_schedule(const Scenario& scenario, const PathAssignment& paths,
                            double sigma, ScheduleOptions options) {
  scenario.validate();
  if (!(sigma >= 0.0)) throw std::invalid_argument("run_schedule: sigma must be >= 0");
  return SlotScheduler(scenario, paths, sigma, options).run();
}

double sum_rate_lower_bound(const LinkBudget& budget,
                            std::span<const std::size_t> links, double sigma) {
  for (std::size_t a = 0; a < links.size(); ++a) {
    for (std::size_t b = a + 1; b < links.size(); ++b) {
      if (in_contention(budget, links[a], links[b], sigma)) {
        throw std::invalid_argument(
            "sum_rate_lower_bound: set contains a contending pair");
      }
    }
  }
  const double worst =
      static_cast<double>(links.empty() ? 0 : links.size() - 1) * sigma;
  double total = 0.0;
  for (std::size_t l : links) {
    total += shannon_rate(budget.params(), budget.signal(l), worst);
  }
  return total;
}

double sum_rate(const LinkBudget& budget, std::span<const std::size_t> links) {
  double total = 0.0;
  for (std::size_t l : links) total += budget.rate(l, links);
  return total;
}

}  // namespace raqs
