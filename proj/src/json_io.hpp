#pragma once

#include <json.hpp>

#include "raqs/channel.hpp"

namespace raqs {

/// Overlays the channel fields present in `j` onto `base`. Accepts either
/// `noise_mw_per_hz` or the human-friendly `noise_dbm_per_mhz`, and
/// `bandwidth_hz` or `bandwidth_mhz`.
ChannelParams channel_from_json(const nlohmann::json& j, ChannelParams base);

}  // namespace raqs
