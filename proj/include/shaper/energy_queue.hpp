#pragma once

#include "shaper/config.hpp"

namespace shaper {

/// Stationary statistics of the harvest-and-consume buffer: Poisson unit
/// arrivals at lambda_E, deterministic unit consumption at mu_E while active.
struct QueueAnalytics {
  double utilization = 0.0;        // lambda_E / mu_E
  double off_probability = 0.0;    // buffer-empty probability; 0 when unstable
  double p_one = 0.0;              // P{exactly one unit buffered}
  double shutdown_rate_per_s = 0.0;
  double handover_power_w = 0.0;   // 2*C_ho*shutdown_rate
  bool stable = false;             // false means harvested energy is sufficient
};

/// Closed-form buffer analytics. With lambda >= mu the buffer grows without
/// bound, the cell never sleeps, and all off/handover terms are zero.
/// Otherwise, with rho = lambda/mu:
///   off_probability = 1 - rho
///   p_one           = (1 - rho)(e^rho - 1)
///   shutdown_rate   = p_one * mu * e^-rho
///   handover power  = 2 * C_ho * shutdown_rate
QueueAnalytics analyze_queue(const EnergyConfig& energy, double service_rate_per_s);

}  // namespace shaper
