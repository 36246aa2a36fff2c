#include "raqs/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace raqs {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double ChannelParams::k_factor() const {
  if (k_override) return *k_override;
  const double r = wavelength_m / (4.0 * std::numbers::pi);
  return r * r;
}

void ChannelParams::validate() const {
  if (!(tx_power_mw > 0.0)) throw std::invalid_argument("channel: tx power must be > 0");
  if (!(path_loss_exp > 0.0)) {
    throw std::invalid_argument("channel: path loss exponent must be > 0");
  }
  if (!(mui_factor >= 0.0 && mui_factor <= 1.0)) {
    throw std::invalid_argument("channel: MUI factor must lie in [0, 1]");
  }
  if (!(efficiency > 0.0 && efficiency < 1.0)) {
    throw std::invalid_argument("channel: efficiency must lie in (0, 1)");
  }
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("channel: bandwidth must be > 0");
  if (!(noise_density_mw_per_hz >= 0.0)) {
    throw std::invalid_argument("channel: noise density must be >= 0");
  }
  if (!(wavelength_m > 0.0)) throw std::invalid_argument("channel: wavelength must be > 0");
  if (k_override && !(*k_override > 0.0)) {
    throw std::invalid_argument("channel: k factor must be > 0");
  }
  if (!(half_power_beamwidth_deg > 0.0 && half_power_beamwidth_deg <= 180.0)) {
    throw std::invalid_argument("channel: beamwidth must lie in (0, 180]");
  }
}

AntennaPattern AntennaPattern::from_beamwidth(double hpbw_deg) {
  const double half_rad = hpbw_deg / 2.0 * std::numbers::pi / 180.0;
  const double amp = 1.6162 / std::sin(half_rad);
  AntennaPattern p;
  p.half_power_beamwidth_deg = hpbw_deg;
  p.g0_db = 10.0 * std::log10(amp * amp);
  p.main_lobe_deg = 2.6 * hpbw_deg;
  p.side_lobe_db = -0.4111 * std::log(hpbw_deg) - 10.579;
  return p;
}

double AntennaPattern::gain_db(double offset_deg) const {
  if (!(offset_deg >= 0.0 && offset_deg <= 180.0)) {
    throw std::invalid_argument("antenna gain: offset angle outside [0, 180]");
  }
  if (offset_deg <= main_lobe_deg / 2.0) {
    const double u = 2.0 * offset_deg / half_power_beamwidth_deg;
    return g0_db - 3.01 * u * u;
  }
  return side_lobe_db;
}

double AntennaPattern::gain_linear(double offset_deg) const {
  return std::pow(10.0, gain_db(offset_deg) / 10.0);
}

double antenna_gain(const AntennaPattern& pattern, double offset_deg) {
  return pattern.gain_linear(offset_deg);
}

double offset_angle_deg(const Position& origin, const Position& boresight_target,
                        const Position& other) {
  const double ax = boresight_target.x - origin.x;
  const double ay = boresight_target.y - origin.y;
  const double bx = other.x - origin.x;
  const double by = other.y - origin.y;
  // atan2 of cross/dot is accurate near 0 and 180 where acos is not.
  const double cross = ax * by - ay * bx;
  const double dot = ax * bx + ay * by;
  const double deg = std::atan2(std::abs(cross), dot) * 180.0 / std::numbers::pi;
  return std::clamp(deg, 0.0, 180.0);
}

double noise_power(const ChannelParams& params) {
  return params.noise_density_mw_per_hz * params.bandwidth_hz;
}

double shannon_rate(const ChannelParams& params, double signal_mw,
                    double interference_mw) {
  const double denom = noise_power(params) + interference_mw;
  if (signal_mw <= 0.0) return 0.0;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return params.efficiency * params.bandwidth_hz *
         std::log2(1.0 + signal_mw / denom);
}

Channel::Channel(ChannelParams params, const Topology& topology,
                 std::set<std::pair<NodeIndex, NodeIndex>> blocked_pairs)
    : params_(params),
      pattern_(AntennaPattern::from_beamwidth(params.half_power_beamwidth_deg)),
      topology_(topology),
      blocked_(std::move(blocked_pairs)) {
  params_.validate();
}

bool Channel::is_blocked(NodeIndex a, NodeIndex b) const {
  return blocked_.contains({std::min(a, b), std::max(a, b)});
}

double Channel::received_power(NodeIndex tx, NodeIndex tx_target, NodeIndex rx,
                               NodeIndex rx_target) const {
  if (tx == rx) throw std::invalid_argument("received_power: tx == rx");
  const Position& ptx = topology_.node(tx).pos;
  const Position& prx = topology_.node(rx).pos;
  const double d = distance(ptx, prx);
  if (!(d > 0.0)) throw std::invalid_argument("received_power: zero distance");

  const double gt =
      pattern_.gain_linear(offset_angle_deg(ptx, topology_.node(tx_target).pos, prx));
  const double gr =
      pattern_.gain_linear(offset_angle_deg(prx, topology_.node(rx_target).pos, ptx));
  return params_.k_factor() * params_.tx_power_mw * gt * gr *
         std::pow(d, -params_.path_loss_exp);
}

double Channel::signal_power(const DirectedLink& link) const {
  if (is_blocked(link.tx, link.rx)) return 0.0;
  return unobstructed_signal_power(link);
}

double Channel::unobstructed_signal_power(const DirectedLink& link) const {
  return received_power(link.tx, link.rx, link.rx, link.tx);
}

double Channel::interference_power(const DirectedLink& interferer,
                                   const DirectedLink& victim) const {
  if (is_blocked(interferer.tx, victim.rx)) return 0.0;
  return params_.mui_factor *
         received_power(interferer.tx, interferer.rx, victim.rx, victim.tx);
}

double Channel::link_rate(const DirectedLink& link) const {
  return shannon_rate(params_, signal_power(link), 0.0);
}

double Channel::slot_rate(const DirectedLink& link,
                          std::span<const DirectedLink> concurrent) const {
  double interference = 0.0;
  for (const DirectedLink& other : concurrent) {
    if (other == link) continue;
    interference += interference_power(other, link);
  }
  return shannon_rate(params_, signal_power(link), interference);
}

std::set<std::pair<NodeIndex, NodeIndex>> blocked_pairs(
    std::span<const FlowSpec> flows) {
  std::set<std::pair<NodeIndex, NodeIndex>> out;
  for (const FlowSpec& f : flows) {
    if (f.blocked) out.insert({std::min(f.src, f.dst), std::max(f.src, f.dst)});
  }
  return out;
}

LinkBudget::LinkBudget(const Channel& channel, std::vector<DirectedLink> links)
    : params_(channel.params()),
      links_(std::move(links)),
      signal_(links_.size()),
      interference_(links_.size() * links_.size(), 0.0),
      noise_(channel.noise_power()) {
  const std::size_t n = links_.size();
  for (std::size_t i = 0; i < n; ++i) {
    signal_[i] = channel.signal_power(links_[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      interference_[i * n + j] =
          links_[i].shares_node(links_[j])
              ? std::numeric_limits<double>::infinity()
              : channel.interference_power(links_[i], links_[j]);
    }
  }
}

double LinkBudget::solo_rate(std::size_t i) const {
  return shannon_rate(params_, signal_[i], 0.0);
}

double LinkBudget::rate(std::size_t i, std::span<const std::size_t> active) const {
  double interference = 0.0;
  for (std::size_t j : active) {
    if (j != i) interference += this->interference(j, i);
  }
  return shannon_rate(params_, signal_[i], interference);
}

}  // namespace raqs
