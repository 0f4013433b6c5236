#pragma once

#include <cmath>

#include "shaper/errors.hpp"

namespace shaper {

/// Grid-powered wide-area base station parameters.
struct MacroConfig {
  double coverage_radius_m = 0.0;    // D_m
  double static_power_w = 0.0;       // P_0m
  double tx_power_w = 0.0;           // P_Tm
  double amp_inefficiency = 0.0;     // beta_m
  double pathloss_exp = 0.0;         // alpha_m, must exceed 2
  double bandwidth_hz = 0.0;         // W_m
  double interference_factor = 0.0;  // theta_m
};

/// Harvesting-powered small cell parameters. Lies fully inside macro coverage.
struct SmallCellConfig {
  double coverage_radius_m = 0.0;    // D_s
  double static_power_w = 0.0;       // P_0s
  double tx_power_w = 0.0;           // P_Ts
  double amp_inefficiency = 0.0;     // beta_s
  double pathloss_exp = 0.0;         // alpha_s
  double bandwidth_hz = 0.0;         // W_s
  double interference_factor = 0.0;  // theta_s
  double macro_sc_distance_m = 0.0;  // distance between the two sites
};

/// Per-user service target: rate floor and the admissible outage probability.
struct QosSpec {
  double rate_threshold_bps = 0.0;      // R_th
  double outage_target = 0.0;           // eta in (0,1)
  double noise_density_w_per_hz = 0.0;  // sigma^2, SI units
};

struct NetworkConfig {
  MacroConfig macro;
  SmallCellConfig sc;
};

/// Per-period user densities (users per square metre).
struct TrafficSnapshot {
  double macro_density_per_m2 = 0.0;  // outside the small cell
  double sc_density_per_m2 = 0.0;     // inside the small cell
};

/// Discrete-unit energy harvesting process and handover cost.
struct EnergyConfig {
  double arrival_rate_per_s = 0.0;  // lambda_E, harvested units per second
  double unit_joules = 1.0;         // E, joules per unit
  double handover_cost_j = 0.0;     // C_ho, joules per handover event
};

/// dBm-per-MHz spectral density to W/Hz. -105 dBm/MHz -> 3.162e-20 W/Hz.
inline double noise_dbm_per_mhz_to_w_per_hz(double dbm_per_mhz) {
  return std::pow(10.0, dbm_per_mhz / 10.0) * 1e-3 / 1e6;
}

void validate(const MacroConfig& c);
void validate(const SmallCellConfig& c, const MacroConfig& macro);
void validate(const QosSpec& c);
void validate(const TrafficSnapshot& c);
void validate(const EnergyConfig& c);
void validate(const NetworkConfig& c);

}  // namespace shaper
