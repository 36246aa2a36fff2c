#include "raqs/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json_io.hpp"

namespace raqs {

void SweepSpec::validate() const {
  if (schemes.empty()) throw std::invalid_argument("sweep: no scheme selected");
  if (blocked_counts.empty() || sigma_values.empty() || beta_values.empty()) {
    throw std::invalid_argument("sweep: empty grid axis");
  }
  if (repetitions < 1) throw std::invalid_argument("sweep: repetitions must be >= 1");
  for (std::size_t b : blocked_counts) {
    if (b > base.n_flows) throw std::invalid_argument("blocked > flows");
  }
  for (double s : sigma_values) {
    if (!(s >= 0.0)) throw std::invalid_argument("sweep: sigma must be >= 0");
  }
  for (double b : beta_values) {
    if (!(b > 0.0)) throw std::invalid_argument("sweep: beta must be > 0");
  }
  if (base.n_bs < 2) throw std::invalid_argument("sweep: need >= 2 base stations");
  if (base.n_flows < 1) throw std::invalid_argument("sweep: need >= 1 flow");
  base.frame.validate();
  base.channel.validate();
}

Scenario sweep_scenario(const SweepSpec& spec, std::size_t rep, std::size_t blocked) {
  return make_scenario(spec.base, derive_seed(spec.master_seed, rep), blocked);
}

std::vector<ResultRow> run_experiment(const SweepSpec& spec) {
  spec.validate();
  const std::size_t n_sigma = spec.sigma_values.size();
  const std::size_t n_beta = spec.beta_values.size();
  const std::size_t n_rep = spec.repetitions;
  const std::size_t per_blocked = n_sigma * n_beta * n_rep;
  const std::size_t per_scheme = spec.blocked_counts.size() * per_blocked;
  std::vector<ResultRow> rows(spec.schemes.size() * per_scheme);

  // One task per (blocked, repetition): the scenario is built once and every
  // scheme/sigma/beta combination writes its fixed row slot.
  const std::size_t tasks = spec.blocked_counts.size() * n_rep;
  auto work = [&](std::size_t task) {
    const std::size_t bi = task / n_rep;
    const std::size_t rep = task % n_rep;
    const std::size_t blocked = spec.blocked_counts[bi];
    const Scenario scenario = sweep_scenario(spec, rep, blocked);
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      const SchemeId scheme = spec.schemes[si];
      for (std::size_t gi = 0; gi < n_sigma; ++gi) {
        for (std::size_t ki = 0; ki < n_beta; ++ki) {
          const double sigma = spec.sigma_values[gi];
          const double beta = spec.beta_values[ki];
          const SchemeRun run = run_scheme(scheme, scenario, sigma, beta);
          const std::size_t idx = si * per_scheme + bi * per_blocked +
                                  (gi * n_beta + ki) * n_rep + rep;
          rows[idx] = {scheme, blocked, sigma, beta, rep, scenario.seed,
                       run.result.metrics.completed_count,
                       run.result.metrics.system_throughput_bps};
        }
      }
    }
  };

  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    for (std::size_t t = 0; t < tasks; ++t) work(t);
    return rows;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < tasks; t += threads) work(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<int, std::size_t, double, double>;
  std::map<Key, std::size_t> index;
  std::vector<AggregateRow> out;
  std::vector<std::vector<const ResultRow*>> groups;
  for (const ResultRow& r : rows) {
    const Key key{static_cast<int>(r.scheme), r.blocked, r.sigma, r.beta};
    auto [it, fresh] = index.try_emplace(key, out.size());
    if (fresh) {
      out.push_back({r.scheme, r.blocked, r.sigma, r.beta});
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto& members = groups[g];
    const double n = static_cast<double>(members.size());
    double c_sum = 0.0;
    double t_sum = 0.0;
    for (const ResultRow* r : members) {
      c_sum += static_cast<double>(r->completed);
      t_sum += r->throughput_bps;
    }
    const double c_mean = c_sum / n;
    const double t_mean = t_sum / n;
    double c_var = 0.0;
    double t_var = 0.0;
    for (const ResultRow* r : members) {
      c_var += std::pow(static_cast<double>(r->completed) - c_mean, 2);
      t_var += std::pow(r->throughput_bps - t_mean, 2);
    }
    AggregateRow& a = out[g];
    a.n = members.size();
    a.completed_mean = c_mean;
    a.throughput_mean = t_mean;
    if (members.size() > 1) {
      a.completed_stderr = std::sqrt(c_var / (n - 1.0) / n);
      a.throughput_stderr = std::sqrt(t_var / (n - 1.0) / n);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string long_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "scheme,blocked,sigma,beta,seed,completed,throughput_bps\n";
  for (const ResultRow& r : rows) {
    os << scheme_name(r.scheme) << ',' << r.blocked << ',' << format_double(r.sigma)
       << ',' << format_double(r.beta) << ',' << r.seed << ',' << r.completed << ','
       << format_double(r.throughput_bps) << '\n';
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "scheme,blocked,sigma,beta,n,completed_mean,completed_stderr,"
        "throughput_mean_bps,throughput_stderr_bps\n";
  for (const AggregateRow& a : rows) {
    os << scheme_name(a.scheme) << ',' << a.blocked << ',' << format_double(a.sigma)
       << ',' << format_double(a.beta) << ',' << a.n << ','
       << format_double(a.completed_mean) << ',' << format_double(a.completed_stderr)
       << ',' << format_double(a.throughput_mean) << ','
       << format_double(a.throughput_stderr) << '\n';
  }
  return os.str();
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1) {
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and per_decade >= 1");
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  const int steps = static_cast<int>(std::lround((b - a) * per_decade));
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) {
    out.push_back(std::pow(10.0, a + static_cast<double>(k) / per_decade));
  }
  return out;
}

std::filesystem::path resolve_output(const std::filesystem::path& path) {
  const char* dir = std::getenv("RAQS_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || path.is_absolute()) return path;
  return std::filesystem::path(dir) / path;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SweepSpec sweep_from_json(const std::string& text) {
  using nlohmann::json;
  SweepSpec spec;
  try {
    const json doc = json::parse(text);
    if (doc.contains("topology")) {
      const json& t = doc.at("topology");
      spec.base.n_bs = t.value("n_bs", spec.base.n_bs);
      spec.base.relay_mean = t.value("relay_mean", spec.base.relay_mean);
      spec.base.area_side = t.value("area_side", spec.base.area_side);
    }
    if (doc.contains("flows")) {
      const json& f = doc.at("flows");
      spec.base.n_flows = f.value("count", spec.base.n_flows);
      spec.base.qos_min_bps = f.value("qos_min_bps", spec.base.qos_min_bps);
      spec.base.qos_max_bps = f.value("qos_max_bps", spec.base.qos_max_bps);
    }
    if (doc.contains("frame")) {
      const json& fr = doc.at("frame");
      spec.base.frame.num_slots = fr.value("K", spec.base.frame.num_slots);
      spec.base.frame.slot_us = fr.value("slot_us", spec.base.frame.slot_us);
      spec.base.frame.sched_us = fr.value("sched_us", spec.base.frame.sched_us);
    }
    if (doc.contains("channel")) {
      spec.base.channel = channel_from_json(doc.at("channel"), spec.base.channel);
    }
    if (doc.contains("sweep")) {
      const json& s = doc.at("sweep");
      if (s.contains("schemes")) {
        spec.schemes.clear();
        for (const auto& name : s.at("schemes")) {
          const auto id = parse_scheme(name.get<std::string>());
          if (!id) throw std::invalid_argument("sweep: unknown scheme " + name.dump());
          spec.schemes.push_back(*id);
        }
      }
      if (s.contains("blocked")) {
        spec.blocked_counts = s.at("blocked").get<std::vector<std::size_t>>();
      }
      if (s.contains("sigma")) spec.sigma_values = s.at("sigma").get<std::vector<double>>();
      if (s.contains("beta")) spec.beta_values = s.at("beta").get<std::vector<double>>();
      spec.repetitions = s.value("repetitions", spec.repetitions);
      spec.master_seed = s.value("seed", spec.master_seed);
      spec.threads = s.value("threads", spec.threads);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: malformed document: ") + e.what());
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sweep_from_json(buf.str());
}

}  // namespace raqs
