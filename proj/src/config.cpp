#include "shaper/config.hpp"

#include <cmath>
#include <string>

namespace shaper {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ConfigError(field + ": " + why);
}

void require_positive(double v, const std::string& field) {
  require(std::isfinite(v) && v > 0.0, field, "must be finite and > 0");
}

}  // namespace

void validate(const MacroConfig& c) {
  require_positive(c.coverage_radius_m, "macro.coverage_radius_m");
  require_positive(c.static_power_w, "macro.static_power_w");
  require_positive(c.tx_power_w, "macro.tx_power_w");
  require_positive(c.amp_inefficiency, "macro.amp_inefficiency");
  require_positive(c.bandwidth_hz, "macro.bandwidth_hz");
  require(c.pathloss_exp > 2.0, "macro.pathloss_exp",
          "must exceed 2 for the edge-rate integral to converge");
  require(std::isfinite(c.interference_factor) && c.interference_factor >= 0.0,
          "macro.interference_factor", "must be >= 0");
}

void validate(const SmallCellConfig& c, const MacroConfig& macro) {
  require_positive(c.coverage_radius_m, "sc.coverage_radius_m");
  require_positive(c.static_power_w, "sc.static_power_w");
  require_positive(c.tx_power_w, "sc.tx_power_w");
  require_positive(c.amp_inefficiency, "sc.amp_inefficiency");
  require_positive(c.bandwidth_hz, "sc.bandwidth_hz");
  require_positive(c.macro_sc_distance_m, "sc.macro_sc_distance_m");
  require(c.pathloss_exp > 2.0, "sc.pathloss_exp",
          "must exceed 2 for the edge-rate integral to converge");
  require(std::isfinite(c.interference_factor) && c.interference_factor >= 0.0,
          "sc.interference_factor", "must be >= 0");
  require(c.coverage_radius_m < macro.coverage_radius_m, "sc.coverage_radius_m",
          "small cell radius must be smaller than macro radius");
  require(c.macro_sc_distance_m + c.coverage_radius_m <= macro.coverage_radius_m,
          "sc.macro_sc_distance_m", "small cell must lie inside macro coverage");
}

void validate(const QosSpec& c) {
  require_positive(c.rate_threshold_bps, "qos.rate_threshold_bps");
  require_positive(c.noise_density_w_per_hz, "qos.noise_density_w_per_hz");
  require(c.outage_target > 0.0 && c.outage_target < 1.0, "qos.outage_target",
          "must lie strictly between 0 and 1");
}

void validate(const TrafficSnapshot& c) {
  require(std::isfinite(c.macro_density_per_m2) && c.macro_density_per_m2 >= 0.0,
          "traffic.macro_density", "must be >= 0");
  require(std::isfinite(c.sc_density_per_m2) && c.sc_density_per_m2 >= 0.0,
          "traffic.sc_density", "must be >= 0");
}

void validate(const EnergyConfig& c) {
  require(std::isfinite(c.arrival_rate_per_s) && c.arrival_rate_per_s >= 0.0,
          "energy.arrival_rate_per_s", "must be >= 0");
  require_positive(c.unit_joules, "energy.unit_joules");
  require(std::isfinite(c.handover_cost_j) && c.handover_cost_j >= 0.0,
          "energy.handover_cost_j", "must be >= 0");
}

void validate(const NetworkConfig& c) {
  validate(c.macro);
  validate(c.sc, c.macro);
}

}  // namespace shaper
