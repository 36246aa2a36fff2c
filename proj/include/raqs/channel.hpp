#pragma once

// LOS mmWave link model: directional antenna pattern, Friis-style received
// power, multi-user interference and Shannon rate. Powers are linear mW.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "raqs/model.hpp"

namespace raqs {

inline constexpr double kSpeedOfLight = 299792458.0;

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

struct ChannelParams {
  double tx_power_mw = 1000.0;
  double path_loss_exp = 2.0;
  double mui_factor = 1.0;           // rho
  double efficiency = 0.5;           // eta
  double bandwidth_hz = 1200e6;
  double noise_density_mw_per_hz = dbm_to_mw(-134.0) / 1e6;  // -134 dBm/MHz
  double wavelength_m = kSpeedOfLight / 60e9;
  std::optional<double> k_override;  // defaults to (wavelength / 4 pi)^2
  double half_power_beamwidth_deg = 30.0;

  double k_factor() const;
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct AntennaPattern {
  double half_power_beamwidth_deg = 30.0;
  double g0_db = 0.0;
  double main_lobe_deg = 0.0;
  double side_lobe_db = 0.0;

  static AntennaPattern from_beamwidth(double half_power_beamwidth_deg);

  /// Gain in dB at `offset_deg` from boresight; throws outside [0, 180].
  double gain_db(double offset_deg) const;
  double gain_linear(double offset_deg) const;
};

/// Linear gain of `pattern` at `offset_deg` from boresight.
double antenna_gain(const AntennaPattern& pattern, double offset_deg);

/// Angle in degrees, clamped to [0, 180], between the boresight from `origin`
/// toward `boresight_target` and the direction from `origin` toward `other`.
double offset_angle_deg(const Position& origin, const Position& boresight_target,
                        const Position& other);

double noise_power(const ChannelParams& params);

/// eta * W * log2(1 + signal / (N0 W + interference)).
double shannon_rate(const ChannelParams& params, double signal_mw,
                    double interference_mw);

/// Transmitter `tx` sending to receiver `rx`; both boresights face each other.
struct DirectedLink {
  NodeIndex tx = 0;
  NodeIndex rx = 0;

  bool shares_node(const DirectedLink& other) const {
    return tx == other.tx || tx == other.rx || rx == other.tx || rx == other.rx;
  }
  friend bool operator==(const DirectedLink&, const DirectedLink&) = default;
  friend auto operator<=>(const DirectedLink&, const DirectedLink&) = default;
};

/// Channel bound to one topology. Pairs in the blocked set exchange no power
/// in either direction (signal or interference).
class Channel {
 public:
  Channel(ChannelParams params, const Topology& topology,
          std::set<std::pair<NodeIndex, NodeIndex>> blocked_pairs = {});

  const ChannelParams& params() const { return params_; }
  const AntennaPattern& pattern() const { return pattern_; }
  const Topology& topology() const { return topology_; }

  bool is_blocked(NodeIndex a, NodeIndex b) const;

  /// k * Pt * Gt * Gr * d^-n with tx boresight toward `tx_target` and rx
  /// boresight toward `rx_target`. No rho, no blockage. Throws on d == 0.
  double received_power(NodeIndex tx, NodeIndex tx_target, NodeIndex rx,
                        NodeIndex rx_target) const;

  /// Intended-signal power of `link`; zero across a blocked pair.
  double signal_power(const DirectedLink& link) const;
  /// Same as signal_power but ignores blockage.
  double unobstructed_signal_power(const DirectedLink& link) const;

  /// rho-scaled power that `interferer` lands on the receiver of `victim`.
  /// Zero across a blocked pair. Links must be node-disjoint.
  double interference_power(const DirectedLink& interferer,
                            const DirectedLink& victim) const;

  double noise_power() const { return raqs::noise_power(params_); }

  /// Interference-free rate of `link`.
  double link_rate(const DirectedLink& link) const;

  /// Rate of `link` while every link in `concurrent` transmits.
  double slot_rate(const DirectedLink& link,
                   std::span<const DirectedLink> concurrent) const;

 private:
  ChannelParams params_;
  AntennaPattern pattern_;
  Topology topology_;
  std::set<std::pair<NodeIndex, NodeIndex>> blocked_;
};

/// Blocked (src, dst) base-station pairs of `flows`, stored as (min, max).
std::set<std::pair<NodeIndex, NodeIndex>> blocked_pairs(
    std::span<const FlowSpec> flows);

/// Precomputed signal and pairwise interference power for a fixed set of
/// directed links. Entry (a, b) is the power link a lands on link b's
/// receiver; node-sharing pairs hold +infinity since they can never be
/// concurrent.
class LinkBudget {
 public:
  LinkBudget(const Channel& channel, std::vector<DirectedLink> links);

  std::size_t size() const { return links_.size(); }
  const DirectedLink& link(std::size_t i) const { return links_[i]; }
  double signal(std::size_t i) const { return signal_[i]; }
  double interference(std::size_t from, std::size_t to) const {
    return interference_[from * links_.size() + to];
  }
  bool shares_node(std::size_t a, std::size_t b) const {
    return links_[a].shares_node(links_[b]);
  }
  double noise() const { return noise_; }
  const ChannelParams& params() const { return params_; }

  /// Interference-free rate of link i.
  double solo_rate(std::size_t i) const;
  /// Rate of link i when the links in `active` transmit (i may be included).
  double rate(std::size_t i, std::span<const std::size_t> active) const;

 private:
  ChannelParams params_;
  std::vector<DirectedLink> links_;
  std::vector<double> signal_;
  std::vector<double> interference_;
  double noise_ = 0.0;
};

}  // namespace raqs
