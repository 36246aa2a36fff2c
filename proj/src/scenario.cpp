#include "raqs/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_io.hpp"

namespace raqs {

using nlohmann::json;

void Scenario::validate() const {
  frame.validate();
  channel.validate();
  validate_flows(topology, flows);
}

std::size_t Scenario::blocked_count() const {
  std::size_t n = 0;
  for (const FlowSpec& f : flows) n += f.blocked ? 1 : 0;
  return n;
}

Scenario make_scenario(const ScenarioParams& params, std::uint64_t seed,
                       std::size_t n_blocked) {
  Scenario s;
  s.topology = generate_topology(seed, params.n_bs, params.relay_mean,
                                 params.area_side);
  s.flows = generate_flows(seed, s.topology, params.n_flows,
                           {params.qos_min_bps, params.qos_max_bps}, n_blocked);
  s.frame = params.frame;
  s.channel = params.channel;
  s.seed = seed;
  s.validate();
  return s;
}

namespace {

const char* role_name(Role r) { return r == Role::BaseStation ? "bs" : "relay"; }

Role parse_role(const std::string& s) {
  if (s == "bs") return Role::BaseStation;
  if (s == "relay") return Role::Relay;
  throw std::invalid_argument("scenario: unknown node role '" + s + "'");
}

json channel_to_json(const ChannelParams& c) {
  json j = {{"tx_power_mw", c.tx_power_mw},
            {"path_loss_exp", c.path_loss_exp},
            {"mui_factor", c.mui_factor},
            {"efficiency", c.efficiency},
            {"bandwidth_hz", c.bandwidth_hz},
            {"noise_mw_per_hz", c.noise_density_mw_per_hz},
            {"wavelength_m", c.wavelength_m},
            {"half_power_beamwidth_deg", c.half_power_beamwidth_deg}};
  if (c.k_override) j["k_factor"] = *c.k_override;
  return j;
}

}  // namespace

ChannelParams channel_from_json(const json& j, ChannelParams base) {
  base.tx_power_mw = j.value("tx_power_mw", base.tx_power_mw);
  base.path_loss_exp = j.value("path_loss_exp", base.path_loss_exp);
  base.mui_factor = j.value("mui_factor", base.mui_factor);
  base.efficiency = j.value("efficiency", base.efficiency);
  base.bandwidth_hz = j.value("bandwidth_hz", base.bandwidth_hz);
  if (j.contains("bandwidth_mhz")) base.bandwidth_hz = j.at("bandwidth_mhz").get<double>() * 1e6;
  if (j.contains("noise_mw_per_hz")) {
    base.noise_density_mw_per_hz = j.at("noise_mw_per_hz").get<double>();
  } else if (j.contains("noise_dbm_per_mhz")) {
    base.noise_density_mw_per_hz =
        dbm_to_mw(j.at("noise_dbm_per_mhz").get<double>()) / 1e6;
  }
  base.wavelength_m = j.value("wavelength_m", base.wavelength_m);
  if (j.contains("carrier_hz")) {
    base.wavelength_m = kSpeedOfLight / j.at("carrier_hz").get<double>();
  }
  if (j.contains("k_factor")) base.k_override = j.at("k_factor").get<double>();
  base.half_power_beamwidth_deg =
      j.value("half_power_beamwidth_deg", base.half_power_beamwidth_deg);
  base.validate();
  return base;
}

std::string scenario_to_json(const Scenario& s) {
  json nodes = json::array();
  for (const Node& n : s.topology.nodes()) {
    nodes.push_back({{"id", n.id.index},
                     {"role", role_name(n.id.role)},
                     {"x", n.pos.x},
                     {"y", n.pos.y}});
  }
  json flows = json::array();
  for (const FlowSpec& f : s.flows) {
    flows.push_back({{"id", f.id},
                     {"src", f.src},
                     {"dst", f.dst},
                     {"qos_bps", f.qos_bps},
                     {"blocked", f.blocked}});
  }
  json doc = {{"area_side", s.topology.area_side()},
              {"nodes", std::move(nodes)},
              {"flows", std::move(flows)},
              {"frame",
               {{"K", s.frame.num_slots},
                {"slot_us", s.frame.slot_us},
                {"sched_us", s.frame.sched_us}}},
              {"channel", channel_to_json(s.channel)},
              {"seed", s.seed}};
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    std::vector<Node> nodes;
    for (const json& n : doc.at("nodes")) {
      nodes.push_back({{n.at("id").get<std::size_t>(),
                        parse_role(n.at("role").get<std::string>())},
                       {n.at("x").get<double>(), n.at("y").get<double>()}});
    }
    Scenario s;
    s.topology = Topology(std::move(nodes), doc.at("area_side").get<double>());
    for (const json& f : doc.at("flows")) {
      s.flows.push_back({f.at("id").get<std::size_t>(),
                         f.at("src").get<std::size_t>(),
                         f.at("dst").get<std::size_t>(),
                         f.at("qos_bps").get<double>(),
                         f.value("blocked", false)});
    }
    const json& fr = doc.at("frame");
    s.frame.num_slots = fr.at("K").get<int>();
    s.frame.slot_us = fr.at("slot_us").get<double>();
    s.frame.sched_us = fr.at("sched_us").get<double>();
    if (doc.contains("channel")) s.channel = channel_from_json(doc.at("channel"), {});
    s.seed = doc.value("seed", std::uint64_t{0});
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: malformed document: ") +
                                e.what());
  }
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << scenario_to_json(scenario);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace raqs
