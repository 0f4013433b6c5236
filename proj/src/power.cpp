#include "shaper/power.hpp"

#include <algorithm>
#include <cmath>

#include "shaper/eots.hpp"

namespace shaper {

double bs_power(double static_w, double amp_inefficiency, double tx_power_w,
                double utilized_bw_hz, double total_bw_hz, BsMode mode) {
  if (mode == BsMode::Sleep) return 0.0;
  if (utilized_bw_hz < 0.0 || utilized_bw_hz > total_bw_hz)
    throw DomainError("bs_power: utilized bandwidth outside [0, total]");
  return static_w + utilized_bw_hz / total_bw_hz * amp_inefficiency * tx_power_w;
}

double sc_bandwidth_from_rate(double mu_e_per_s, const EnergyConfig& energy,
                              const SmallCellConfig& sc) {
  const double drain_w = mu_e_per_s * energy.unit_joules;
  if (drain_w < sc.static_power_w)
    throw InfeasibleError("sc_bandwidth_from_rate: drain rate below static power");
  return sc.bandwidth_hz * (drain_w - sc.static_power_w) /
         (sc.amp_inefficiency * sc.tx_power_w);
}

OffloadFraction offload_fraction(double w_ss_hz, const TrafficSnapshot& traffic,
                                 const QosSpec& qos, const DerivedConstants& consts,
                                 const NetworkConfig& net) {
  if (w_ss_hz < 0.0) throw DomainError("offload_fraction: bandwidth must be >= 0");
  const double count = expected_user_count(UserClass::Ssu, traffic, net, 1.0);
  OffloadFraction phi;
  if (count <= 0.0) {
    // No users inside the SC; serving one typical user decides the share.
    phi.raw = consts.tau_ssu * w_ss_hz >= qos.rate_threshold_bps ? 1.0 : 0.0;
    phi.value = phi.raw;
    return phi;
  }
  phi.raw = (consts.tau_ssu * w_ss_hz / qos.rate_threshold_bps - 1.0) / count;
  phi.value = std::clamp(phi.raw, 0.0, 1.0);
  return phi;
}

MacroBandwidths macro_bandwidths(double phi, const TrafficSnapshot& traffic,
                                 const QosSpec& qos, const DerivedConstants& consts,
                                 const NetworkConfig& net, bool enforce_feasible) {
  if (phi < 0.0 || phi > 1.0)
    throw DomainError("macro_bandwidths: offload share outside [0,1]");
  MacroBandwidths bw;
  bw.w_mm_hz = required_bandwidth(
      UserClass::Mmu, expected_user_count(UserClass::Mmu, traffic, net, phi), qos, consts);
  bw.w_msa_hz = required_bandwidth(
      UserClass::Msu, expected_user_count(UserClass::Msu, traffic, net, phi), qos, consts);
  // The sleeping-SC fallback serves SSU-counted users at the MSU efficiency:
  // they sit at the SC but transmit to the macro.
  bw.w_mso_hz = required_bandwidth(
      UserClass::Msu, expected_user_count(UserClass::Ssu, traffic, net, phi), qos, consts);
  if (enforce_feasible && bw.total() > net.macro.bandwidth_hz)
    throw InfeasibleError("macro_bandwidths: macro band cannot satisfy the rate target");
  return bw;
}

OperatingPoint make_operating_point(double mu_e_per_s, const TrafficSnapshot& traffic,
                                    const EnergyConfig& energy, const NetworkConfig& net,
                                    const QosSpec& qos, const DerivedConstants& consts,
                                    bool enforce_macro_feasible) {
  const MuRange range = feasible_mu_range(energy, net, qos, consts, traffic);
  OperatingPoint op;
  op.sc_active = true;
  op.mu_e_per_s = std::clamp(mu_e_per_s, range.lo, range.hi);
  op.w_ss_hz = std::min(sc_bandwidth_from_rate(op.mu_e_per_s, energy, net.sc),
                        net.sc.bandwidth_hz);
  const OffloadFraction phi = offload_fraction(op.w_ss_hz, traffic, qos, consts, net);
  op.offload_fraction = phi.value;
  if (phi.raw > 1.0) {
    // Every SC-area user is already served; shrink to the bandwidth that
    // serves them all so no energy is spent on idle spectrum.
    op.w_ss_hz = required_bandwidth(
        UserClass::Ssu, expected_user_count(UserClass::Ssu, traffic, net, 1.0), qos,
        consts);
  }
  op.queue = analyze_queue(energy, op.mu_e_per_s);
  const MacroBandwidths bw = macro_bandwidths(op.offload_fraction, traffic, qos, consts,
                                              net, enforce_macro_feasible);
  op.w_mm_hz = bw.w_mm_hz;
  op.w_msa_hz = bw.w_msa_hz;
  op.w_mso_hz = bw.w_mso_hz;
  return op;
}

double ongrid_power_active(const OperatingPoint& op, const NetworkConfig& net,
                           const EnergyConfig& energy) {
  const double p_off = op.queue.stable ? op.queue.off_probability : 0.0;
  const double handover_w = 2.0 * energy.handover_cost_j * op.queue.shutdown_rate_per_s;
  return net.macro.static_power_w +
         net.macro.amp_inefficiency * net.macro.tx_power_w / net.macro.bandwidth_hz *
             (op.w_mm_hz + op.w_msa_hz + p_off * op.w_mso_hz) +
         handover_w;
}

double ongrid_power_sc_off(const TrafficSnapshot& traffic, const NetworkConfig& net,
                           const QosSpec& qos, const DerivedConstants& consts) {
  const MacroBandwidths bw = macro_bandwidths(0.0, traffic, qos, consts, net, false);
  return net.macro.static_power_w + net.macro.amp_inefficiency * net.macro.tx_power_w /
                                        net.macro.bandwidth_hz * bw.total();
}

double rf_gain_closed_form(double mu_e_per_s, const EnergyConfig& energy,
                           const DerivedConstants& consts) {
  const double lambda = energy.arrival_rate_per_s;
  if (mu_e_per_s <= lambda)
    return consts.zeta_ee * mu_e_per_s * energy.unit_joules - consts.kappa_w;
  return consts.zeta_ee * lambda * energy.unit_joules -
         lambda / mu_e_per_s * consts.kappa_w;
}

GainReport total_gain(double mu_e_per_s, const EnergyConfig& energy,
                      const DerivedConstants& consts, const TrafficSnapshot& traffic,
                      const NetworkConfig& net, const QosSpec& qos, GainForm form) {
  GainReport report;
  report.form = form;
  report.p_off_w = ongrid_power_sc_off(traffic, net, qos, consts);

  if (expected_user_count(UserClass::Ssu, traffic, net, 1.0) <= 0.0) {
    // Nothing to offload: activation can only cost handovers.
    const QueueAnalytics q = analyze_queue(energy, mu_e_per_s);
    report.rf_gain_w = 0.0;
    report.total_gain_w = -q.handover_power_w;
    report.p_active_w = report.p_off_w - report.total_gain_w;
    return report;
  }

  if (form == GainForm::Pipeline) {
    const OperatingPoint op =
        make_operating_point(mu_e_per_s, traffic, energy, net, qos, consts, false);
    report.p_active_w = ongrid_power_active(op, net, energy);
    report.total_gain_w = report.p_off_w - report.p_active_w;
    report.rf_gain_w = report.total_gain_w + op.queue.handover_power_w;
    return report;
  }

  const QueueAnalytics q = analyze_queue(energy, mu_e_per_s);
  report.rf_gain_w = rf_gain_closed_form(mu_e_per_s, energy, consts);
  report.total_gain_w = report.rf_gain_w - q.handover_power_w;
  report.p_active_w = report.p_off_w - report.total_gain_w;
  return report;
}

}  // namespace shaper
