// raqs: command-line driver for sweeps, oracle gap studies, schedule dumps
// and feasibility validation.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raqs/feasibility.hpp"
#include "raqs/harness.hpp"
#include "raqs/oracle.hpp"

namespace {

using namespace raqs;

std::vector<SchemeId> parse_schemes(const std::vector<std::string>& names) {
  std::vector<SchemeId> out;
  for (const std::string& n : names) {
    if (n == "all") return {std::begin(kAllSchemes), std::end(kAllSchemes)};
    const auto id = parse_scheme(n);
    if (!id) throw std::invalid_argument("unknown scheme '" + n + "'");
    out.push_back(*id);
  }
  return out;
}

std::string agg_path_for(const std::string& out) {
  const auto dot = out.rfind('.');
  if (dot == std::string::npos || out.find('/', dot) != std::string::npos) {
    return out + "_agg.csv";
  }
  return out.substr(0, dot) + "_agg" + out.substr(dot);
}

struct RunArgs {
  std::string config;
  std::vector<std::string> schemes;
  std::vector<std::size_t> blocked;
  std::vector<double> sigma;
  std::vector<double> beta;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::size_t flows = 0;
  unsigned threads = 0;
  std::string out = "results.csv";
};

int cmd_run(const RunArgs& a, CLI::App& sub) {
  SweepSpec spec;
  if (!a.config.empty()) spec = load_sweep_config(a.config);
  if (!a.schemes.empty()) spec.schemes = parse_schemes(a.schemes);
  if (!a.blocked.empty()) spec.blocked_counts = a.blocked;
  if (!a.sigma.empty()) spec.sigma_values = a.sigma;
  if (!a.beta.empty()) spec.beta_values = a.beta;
  if (sub.count("--reps")) spec.repetitions = a.reps;
  if (sub.count("--seed")) spec.master_seed = a.seed;
  if (sub.count("--flows")) spec.base.n_flows = a.flows;
  if (sub.count("--threads")) spec.threads = a.threads;
  spec.validate();

  const auto rows = run_experiment(spec);
  const auto long_path = resolve_output(a.out);
  const auto agg_path = resolve_output(agg_path_for(a.out));
  write_text(long_path, long_csv(rows));
  write_text(agg_path, aggregate_csv(aggregate(rows)));
  std::cout << "wrote " << rows.size() << " rows to " << long_path.string()
            << " and " << agg_path.string() << "\n";
  return 0;
}

int cmd_oracle_gap(std::size_t instances, std::size_t max_flows, int max_slots,
                   std::uint64_t seed, double sigma, const std::string& out) {
  const GapReport report = oracle_gap_study(instances, max_flows, max_slots, seed, sigma);
  std::ostringstream csv;
  csv << "seed,flows,slots,oracle_completed,heuristic_completed,gap\n";
  for (const GapRecord& r : report.records) {
    csv << r.seed << ',' << r.flows << ',' << r.slots << ',' << r.oracle_completed
        << ',' << r.heuristic_completed << ',' << r.gap() << '\n';
  }
  if (!out.empty()) {
    write_text(resolve_output(out), csv.str());
  } else {
    std::cout << csv.str();
  }
  std::cout << "instances=" << report.records.size()
            << " mean_gap=" << format_double(report.mean_gap())
            << " max_gap=" << report.max_gap()
            << " dominance_violations=" << report.dominance_violations() << "\n";
  return report.dominance_violations() == 0 ? 0 : 2;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Relay-assisted QoS-aware mmWave backhaul scheduling simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Monte Carlo sweep, CSV output");
  run_cmd->add_option("--config", run.config, "Sweep config (JSON)")->check(CLI::ExistingFile);
  run_cmd->add_option("--scheme", run.schemes, "raqs|random|stdma|mqis|all (repeatable)");
  run_cmd->add_option("--blocked", run.blocked, "Blocked-flow counts");
  run_cmd->add_option("--sigma", run.sigma, "Contention thresholds in mW");
  run_cmd->add_option("--beta", run.beta, "Relay selection parameters");
  run_cmd->add_option("--reps", run.reps, "Repetitions per grid point");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--flows", run.flows, "Flows per scenario");
  run_cmd->add_option("--threads", run.threads, "Worker threads");
  run_cmd->add_option("--out", run.out, "Long-format CSV path");

  std::size_t gap_instances = 200;
  std::size_t gap_flows = 3;
  int gap_slots = 8;
  std::uint64_t gap_seed = 7;
  double gap_sigma = 0.01;
  std::string gap_out;
  auto* gap_cmd = app.add_subcommand("oracle-gap", "Heuristic vs exhaustive optimum");
  gap_cmd->add_option("--instances", gap_instances)->check(CLI::PositiveNumber);
  gap_cmd->add_option("--max-flows", gap_flows)->check(CLI::Range(1, 3));
  gap_cmd->add_option("--max-slots", gap_slots)->check(CLI::Range(2, 8));
  gap_cmd->add_option("--seed", gap_seed);
  gap_cmd->add_option("--sigma", gap_sigma);
  gap_cmd->add_option("--out", gap_out, "Per-instance CSV (default: stdout)");

  std::string dump_scenario;
  std::string dump_scheme = "raqs";
  std::uint64_t dump_seed = 42;
  std::size_t dump_blocked = 5;
  double dump_sigma = 0.01;
  double dump_beta = 0.53;
  bool dump_graphs = false;
  std::string dump_out;
  std::string dump_save;
  auto* dump_cmd = app.add_subcommand("dump-schedule", "Full schedule matrix of one scenario");
  dump_cmd->add_option("--scenario", dump_scenario, "Scenario document (JSON)")
      ->check(CLI::ExistingFile);
  dump_cmd->add_option("--scheme", dump_scheme);
  dump_cmd->add_option("--seed", dump_seed, "Scenario seed when no document is given");
  dump_cmd->add_option("--blocked", dump_blocked);
  dump_cmd->add_option("--sigma", dump_sigma);
  dump_cmd->add_option("--beta", dump_beta);
  dump_cmd->add_flag("--graphs", dump_graphs, "Also print the graph at every rebuild");
  dump_cmd->add_option("--save-scenario", dump_save, "Write the scenario document here");
  dump_cmd->add_option("--out", dump_out, "Output file (default: stdout)");

  std::size_t val_seeds = 1000;
  std::uint64_t val_master = 1;
  std::vector<std::string> val_schemes{"all"};
  double val_sigma = 0.01;
  double val_beta = 0.53;
  auto* val_cmd = app.add_subcommand("validate", "Feasibility check over many scenarios");
  val_cmd->add_option("--seeds", val_seeds)->check(CLI::PositiveNumber);
  val_cmd->add_option("--seed", val_master, "Master seed");
  val_cmd->add_option("--scheme", val_schemes);
  val_cmd->add_option("--sigma", val_sigma);
  val_cmd->add_option("--beta", val_beta);

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return cmd_run(run, *run_cmd);
  if (*gap_cmd) {
    return cmd_oracle_gap(gap_instances, gap_flows, gap_slots, gap_seed, gap_sigma, gap_out);
  }
  if (*dump_cmd) {
    const auto scheme = parse_scheme(dump_scheme);
    if (!scheme) throw std::invalid_argument("unknown scheme '" + dump_scheme + "'");
    Scenario scenario;
    if (!dump_scenario.empty()) {
      scenario = load_scenario(dump_scenario);
    } else {
      ScenarioParams params;
      if (dump_blocked > params.n_flows) throw std::invalid_argument("blocked > flows");
      scenario = make_scenario(params, dump_seed, dump_blocked);
    }
    if (!dump_save.empty()) save_scenario(scenario, resolve_output(dump_save));
    ScheduleOptions opts;
    opts.record_graphs = dump_graphs;
    const SchemeRun r = run_scheme(*scheme, scenario, dump_sigma, dump_beta, opts);
    std::ostringstream os;
    os << "# scheme " << scheme_name(*scheme) << " sigma " << format_double(dump_sigma)
       << " beta " << format_double(dump_beta) << '\n';
    for (std::size_t f = 0; f < r.paths.size(); ++f) {
      os << "# path " << f << ' ' << r.paths[f].to_string() << '\n';
    }
    os << "# completed " << r.result.metrics.completed_count << " throughput_bps "
       << format_double(r.result.metrics.system_throughput_bps) << '\n';
    for (const GraphSnapshot& g : r.result.graphs) {
      os << "# graph slot " << g.slot << ' ' << g.graph << '\n';
    }
    os << r.result.matrix.dump();
    if (dump_out.empty()) {
      std::cout << os.str();
    } else {
      write_text(resolve_output(dump_out), os.str());
    }
    return 0;
  }
  if (*val_cmd) {
    const auto schemes = parse_schemes(val_schemes);
    ScenarioParams params;
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (std::size_t k = 0; k < val_seeds; ++k) {
      const std::uint64_t seed = derive_seed(val_master, k);
      const std::size_t blocked = k % (params.n_flows + 1);
      const Scenario scenario = make_scenario(params, seed, blocked);
      for (SchemeId s : schemes) {
        const SchemeRun r = run_scheme(s, scenario, val_sigma, val_beta);
        const auto report = feasibility_check(r.result.matrix, r.paths, scenario.flows,
                                              scenario.topology);
        ++checked;
        if (!report.ok()) {
          ++failed;
          std::cerr << scheme_name(s) << " seed " << seed << ": "
                    << report.violations.front() << "\n";
        }
      }
    }
    std::cout << "checked " << checked << " schedules, " << failed << " infeasible\n";
    return failed == 0 ? 0 : 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_impl(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
