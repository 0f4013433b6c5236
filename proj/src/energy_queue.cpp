#include "shaper/energy_queue.hpp"

#include <cmath>

namespace shaper {

QueueAnalytics analyze_queue(const EnergyConfig& energy, double service_rate_per_s) {
  if (!(service_rate_per_s > 0.0))
    throw DomainError("analyze_queue: service rate must be > 0");
  QueueAnalytics q;
  q.utilization = energy.arrival_rate_per_s / service_rate_per_s;
  if (q.utilization >= 1.0) {
    // Energy sufficient: the cell stays active, nothing to hand over.
    q.stable = false;
    return q;
  }
  q.stable = true;
  const double rho = q.utilization;
  q.off_probability = 1.0 - rho;
  q.p_one = (1.0 - rho) * std::expm1(rho);
  q.shutdown_rate_per_s = q.p_one * service_rate_per_s * std::exp(-rho);
  q.handover_power_w = 2.0 * energy.handover_cost_j * q.shutdown_rate_per_s;
  return q;
}

}  // namespace shaper
