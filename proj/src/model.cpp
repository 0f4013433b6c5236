#include "shaper/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace shaper {

namespace {

double edge_tau(double tx_power_w, double pathloss_exp, double interference_factor,
                double bandwidth_hz, double radius_m, const QosSpec& qos,
                const std::string& what) {
  const double arg = qos.outage_target * tx_power_w * (pathloss_exp + 2.0) /
                     (2.0 * (interference_factor + 1.0) * qos.noise_density_w_per_hz *
                      bandwidth_hz * std::pow(radius_m, pathloss_exp));
  const double tau = std::log2(1.0 + arg);
  if (!std::isfinite(tau) || tau <= 0.0)
    throw DomainError(what + ": spectral efficiency is not finite and positive");
  return tau;
}

}  // namespace

double edge_spectral_efficiency(Tier tier, const NetworkConfig& net, const QosSpec& qos) {
  if (tier == Tier::SmallCell) {
    const auto& s = net.sc;
    return edge_tau(s.tx_power_w, s.pathloss_exp, s.interference_factor, s.bandwidth_hz,
                    s.coverage_radius_m, qos, "tau_ssu");
  }
  const auto& m = net.macro;
  return edge_tau(m.tx_power_w, m.pathloss_exp, m.interference_factor, m.bandwidth_hz,
                  m.coverage_radius_m, qos, "tau_mmu");
}

double msu_spectral_efficiency(const NetworkConfig& net, const QosSpec& qos) {
  const auto& m = net.macro;
  const double arg =
      qos.outage_target * m.tx_power_w /
      (qos.noise_density_w_per_hz * m.bandwidth_hz * (m.interference_factor + 1.0) *
       std::pow(net.sc.macro_sc_distance_m, m.pathloss_exp));
  const double tau = std::log2(1.0 + arg);
  if (!std::isfinite(tau) || tau <= 0.0)
    throw DomainError("tau_msu: spectral efficiency is not finite and positive");
  return tau;
}

DerivedConstants derive_constants(const NetworkConfig& net, const QosSpec& qos) {
  DerivedConstants c;
  c.tau_ssu = edge_spectral_efficiency(Tier::SmallCell, net, qos);
  c.tau_mmu = edge_spectral_efficiency(Tier::MacroEdge, net, qos);
  c.tau_msu = msu_spectral_efficiency(net, qos);
  c.zeta_ee = net.sc.bandwidth_hz * c.tau_ssu * net.macro.amp_inefficiency *
              net.macro.tx_power_w /
              (net.macro.bandwidth_hz * c.tau_msu * net.sc.amp_inefficiency *
               net.sc.tx_power_w);
  c.kappa_w = c.zeta_ee * net.sc.static_power_w +
              net.macro.amp_inefficiency * net.macro.tx_power_w * qos.rate_threshold_bps /
                  (net.macro.bandwidth_hz * c.tau_msu);
  return c;
}

double effective_mmu_density(const TrafficSnapshot& traffic, const NetworkConfig& net) {
  const double dm2 = net.macro.coverage_radius_m * net.macro.coverage_radius_m;
  const double ds2 = net.sc.coverage_radius_m * net.sc.coverage_radius_m;
  return traffic.macro_density_per_m2 * (dm2 - ds2) / dm2;
}

double expected_user_count(UserClass cls, const TrafficSnapshot& traffic,
                           const NetworkConfig& net, double offload_fraction) {
  const double sc_disc =
      std::numbers::pi * net.sc.coverage_radius_m * net.sc.coverage_radius_m;
  switch (cls) {
    case UserClass::Ssu:
      return offload_fraction * traffic.sc_density_per_m2 * sc_disc;
    case UserClass::Msu:
      return (1.0 - offload_fraction) * traffic.sc_density_per_m2 * sc_disc;
    case UserClass::Mmu:
      return std::numbers::pi * net.macro.coverage_radius_m * net.macro.coverage_radius_m *
             effective_mmu_density(traffic, net);
  }
  return 0.0;
}

double required_bandwidth(UserClass cls, double expected_user_count, const QosSpec& qos,
                          const DerivedConstants& consts) {
  if (expected_user_count < 0.0)
    throw DomainError("required_bandwidth: expected user count must be >= 0");
  const double tau = cls == UserClass::Ssu   ? consts.tau_ssu
                     : cls == UserClass::Msu ? consts.tau_msu
                                             : consts.tau_mmu;
  return qos.rate_threshold_bps / tau * (1.0 + expected_user_count);
}

double msu_outage_closed_form(const NetworkConfig& net, const QosSpec& qos,
                              const TrafficSnapshot& traffic, double offload_fraction,
                              double allocated_bw_hz) {
  if (allocated_bw_hz <= 0.0)
    throw DomainError("msu_outage_closed_form: bandwidth must be > 0");
  const auto& m = net.macro;
  const double c = (m.interference_factor + 1.0) * qos.noise_density_w_per_hz *
                   m.bandwidth_hz * std::pow(net.sc.macro_sc_distance_m, m.pathloss_exp) /
                   m.tx_power_w;
  const double t = qos.rate_threshold_bps / allocated_bw_hz;
  const double mean = expected_user_count(UserClass::Msu, traffic, net, offload_fraction);

  // Poisson mixture over the peer count; truncate far in the tail.
  double survival = 0.0;
  double pk = std::exp(-mean);
  const double kmax = mean + 14.0 * std::sqrt(mean + 1.0) + 30.0;
  for (int k = 0;; ++k) {
    survival += pk * std::exp(-c * (std::exp2((k + 1) * t) - 1.0));
    if (k + 1 > kmax) break;
    pk *= mean / (k + 1);
  }
  return 1.0 - survival;
}

}  // namespace shaper
