#include "shaper/eots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace shaper {

namespace {

constexpr double kRhoGuard = 1e-9;   // keeps f away from its removable 0/0 point
constexpr double kGainTie = 1e-12;   // gains this close to zero keep the SC off

}  // namespace

MuRange feasible_mu_range(const EnergyConfig& energy, const NetworkConfig& net,
                          const QosSpec& qos, const DerivedConstants& consts,
                          const TrafficSnapshot& traffic) {
  const double count = expected_user_count(UserClass::Ssu, traffic, net, 1.0);
  const double load_cap = std::min(
      1.0, qos.rate_threshold_bps / (consts.tau_ssu * net.sc.bandwidth_hz) * (count + 1.0));
  MuRange r;
  r.lo = net.sc.static_power_w / energy.unit_joules;
  r.hi = (net.sc.static_power_w +
          load_cap * net.sc.amp_inefficiency * net.sc.tx_power_w) /
         energy.unit_joules;
  return r;
}

Regime classify_regime(double kappa_w, double lambda_e, double c_ho) {
  if (kappa_w < 0.0 || lambda_e < 0.0 || c_ho < 0.0)
    throw DomainError("classify_regime: arguments must be >= 0");
  Regime r;
  r.kappa_w = kappa_w;
  const double lc = lambda_e * c_ho;
  r.upper_threshold_w = 3.0 * lc;
  r.lower_threshold_w = (1.0 - 1.0 / std::numbers::e) * lc;
  if (lc == 0.0 || kappa_w >= r.upper_threshold_w) {
    r.tag = RegimeTag::MonotoneIncreasing;
  } else if (kappa_w <= r.lower_threshold_w) {
    r.tag = RegimeTag::MonotoneDecreasing;
  } else {
    r.tag = RegimeTag::InteriorConcave;
  }
  return r;
}

double gain_slope_factor(double rho) {
  // e^-rho * (e^rho - 1 - rho + rho^2) / rho^2, with the cancellation-prone
  // part computed as expm1(rho) - rho.
  return std::exp(-rho) * ((std::expm1(rho) - rho) + rho * rho) / (rho * rho);
}

double solve_optimal_rho(double kappa_w, double lambda_e, double c_ho, double tol) {
  const Regime regime = classify_regime(kappa_w, lambda_e, c_ho);
  if (regime.tag != RegimeTag::InteriorConcave)
    throw DomainError("solve_optimal_rho: no interior stationary point in this regime");
  const double lc = lambda_e * c_ho;
  double lo = kRhoGuard;
  double hi = 1.0 - kRhoGuard;
  // f decreases on (0,1); outside its range the optimum sits at an endpoint.
  if (lc * gain_slope_factor(lo) <= kappa_w) return lo;
  if (lc * gain_slope_factor(hi) >= kappa_w) return hi;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double g = lc * gain_slope_factor(mid) - kappa_w;
    if (std::abs(g) <= tol * kappa_w) break;
    if (g > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  return mid;
}

namespace {

ActiveOptimum pick_best_active(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                               const NetworkConfig& net, const QosSpec& qos,
                               const DerivedConstants& consts, double forced_mu) {
  const MuRange range = feasible_mu_range(energy, net, qos, consts, traffic);
  std::vector<double> candidates;
  if (forced_mu > 0.0) {
    candidates.push_back(std::clamp(forced_mu, range.lo, range.hi));
  } else {
    candidates.push_back(range.lo);
    candidates.push_back(range.hi);
    const double lambda = energy.arrival_rate_per_s;
    if (lambda > range.lo && lambda < range.hi) candidates.push_back(lambda);
    if (lambda > 0.0 && energy.handover_cost_j > 0.0) {
      // Stationary points of the piecewise gain. The slope condition is
      // solved at single and double handover weight (the latter matches the
      // two-handovers-per-sleep-cycle accounting of the reported gain), and
      // once more against the end-to-end form, whose sleeping fallback keeps
      // one typical user's bandwidth on the macro: its stationary point
      // shifts kappa by that unit.
      const double fallback_unit = net.macro.amp_inefficiency * net.macro.tx_power_w *
                                   qos.rate_threshold_bps /
                                   (net.macro.bandwidth_hz * consts.tau_msu);
      const double twice = 2.0 * energy.handover_cost_j;
      const struct {
        double kappa;
        double cost;
      } conditions[] = {{consts.kappa_w, energy.handover_cost_j},
                        {consts.kappa_w, twice},
                        {consts.kappa_w - fallback_unit, twice}};
      for (const auto& cond : conditions) {
        if (cond.kappa <= 0.0) continue;
        if (classify_regime(cond.kappa, lambda, cond.cost).tag !=
            RegimeTag::InteriorConcave)
          continue;
        const double rho = solve_optimal_rho(cond.kappa, lambda, cond.cost);
        candidates.push_back(std::clamp(lambda / rho, range.lo, range.hi));
      }
    }
  }

  ActiveOptimum best;
  bool have = false;
  for (double mu : candidates) {
    const GainReport g =
        total_gain(mu, energy, consts, traffic, net, qos, GainForm::Pipeline);
    if (!have || g.total_gain_w > best.gain.total_gain_w) {
      best.mu_e_per_s = mu;
      best.gain = g;
      have = true;
    }
  }
  best.gain_closed =
      total_gain(best.mu_e_per_s, energy, consts, traffic, net, qos, GainForm::Closed);
  return best;
}

Regime decision_regime(const EnergyConfig& energy, const DerivedConstants& consts,
                       const MuRange& range) {
  if (energy.arrival_rate_per_s >= range.hi) {
    // Harvest outpaces every admissible drain rate: the gain is linear in mu.
    Regime r = classify_regime(consts.kappa_w, energy.arrival_rate_per_s,
                               energy.handover_cost_j);
    r.tag = RegimeTag::EnergySufficientLinear;
    return r;
  }
  return classify_regime(consts.kappa_w, energy.arrival_rate_per_s,
                         energy.handover_cost_j);
}

EotsDecision make_decision(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                           const NetworkConfig& net, const QosSpec& qos, bool greedy) {
  validate(net);
  validate(traffic);
  validate(energy);
  validate(qos);
  const DerivedConstants consts = derive_constants(net, qos);
  const MuRange range = feasible_mu_range(energy, net, qos, consts, traffic);

  EotsDecision d;
  d.regime = decision_regime(energy, consts, range);

  const ActiveOptimum best = pick_best_active(traffic, energy, net, qos, consts,
                                              greedy ? range.hi : 0.0);
  const bool activate = greedy || best.gain.total_gain_w > kGainTie;
  if (activate) {
    d.activate_sc = true;
    d.mu_e_per_s = best.mu_e_per_s;
    d.operating = make_operating_point(best.mu_e_per_s, traffic, energy, net, qos, consts);
    d.predicted_gain_w = best.gain.total_gain_w;
    d.gain = best.gain;
  } else {
    d.activate_sc = false;
    d.mu_e_per_s = 0.0;
    d.operating.sc_active = false;
    const MacroBandwidths bw = macro_bandwidths(0.0, traffic, qos, consts, net);
    d.operating.w_mm_hz = bw.w_mm_hz;
    d.operating.w_msa_hz = bw.w_msa_hz;
    d.operating.w_mso_hz = bw.w_mso_hz;
    d.predicted_gain_w = 0.0;
    d.gain.form = GainForm::Pipeline;
    d.gain.p_off_w = ongrid_power_sc_off(traffic, net, qos, consts);
    d.gain.p_active_w = d.gain.p_off_w;
  }
  return d;
}

}  // namespace

ActiveOptimum best_active_gain(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                               const NetworkConfig& net, const QosSpec& qos) {
  const DerivedConstants consts = derive_constants(net, qos);
  return pick_best_active(traffic, energy, net, qos, consts, 0.0);
}

EotsDecision eots_decision(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                           const NetworkConfig& net, const QosSpec& qos) {
  return make_decision(traffic, energy, net, qos, false);
}

EotsDecision greedy_decision(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                             const NetworkConfig& net, const QosSpec& qos) {
  return make_decision(traffic, energy, net, qos, true);
}

}  // namespace shaper
