#pragma once

#include "shaper/power.hpp"

namespace shaper {

enum class RegimeTag {
  EnergySufficientLinear,  // the whole feasible range sits below lambda_E
  MonotoneIncreasing,      // kappa >= 3*lambda_E*C_ho
  MonotoneDecreasing,      // kappa <= (1 - 1/e)*lambda_E*C_ho
  InteriorConcave,         // between the two; stationary point may be interior
};

struct Regime {
  RegimeTag tag = RegimeTag::MonotoneIncreasing;
  double kappa_w = 0.0;
  double upper_threshold_w = 0.0;  // 3*lambda_E*C_ho
  double lower_threshold_w = 0.0;  // (1 - 1/e)*lambda_E*C_ho
};

struct MuRange {
  double lo = 0.0;  // P_0s/E: bare static draw
  double hi = 0.0;  // full SC band or the all-users-served point, whichever binds
};

/// Activation verdict with the chosen drain rate and its predicted gain.
struct EotsDecision {
  bool activate_sc = false;
  double mu_e_per_s = 0.0;
  OperatingPoint operating;
  double predicted_gain_w = 0.0;  // 0 when the SC stays off
  Regime regime;
  GainReport gain;  // pipeline-form report at the chosen rate
};

/// Admissible drain rates: lo = P_0s/E,
/// hi = (P_0s + min{1, (R_th/(tau_ssu*W_s))*(rho_s*pi*D_s^2 + 1)}*beta_s*P_Ts)/E.
MuRange feasible_mu_range(const EnergyConfig& energy, const NetworkConfig& net,
                          const QosSpec& qos, const DerivedConstants& consts,
                          const TrafficSnapshot& traffic);

/// Gain-shape classification from the kappa-vs-handover-cost thresholds alone.
Regime classify_regime(double kappa_w, double lambda_e, double c_ho);

/// Derivative of (1 - rho)(1 - e^-rho)/rho scaled by -1: strictly decreasing
/// from 3/2 at 0 to 1 - 1/e at 1. The stationarity condition solved below is
/// lambda_E*C_ho*f(rho) = kappa.
double gain_slope_factor(double rho);

/// Bisects lambda_E*C_ho*f(rho) = kappa on (eps, 1-eps). Requires the
/// InteriorConcave regime. When the ratio leaves f's range the result clamps
/// to the matching end of the interval.
double solve_optimal_rho(double kappa_w, double lambda_e, double c_ho,
                         double tol = 1e-10);

/// Best activation gain over the feasible range with the SC forced on.
/// Candidates: both range ends, the arrival-rate knee, and the stationary
/// points of the slope condition at single and double handover weight; ranked
/// by the pipeline gain.
struct ActiveOptimum {
  double mu_e_per_s = 0.0;
  GainReport gain;          // pipeline form
  GainReport gain_closed;   // closed form at the same rate
};
ActiveOptimum best_active_gain(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                               const NetworkConfig& net, const QosSpec& qos);

/// Full decision: activate only when the best activation gain is positive.
EotsDecision eots_decision(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                           const NetworkConfig& net, const QosSpec& qos);

/// Baseline that always activates at the top of the feasible range.
EotsDecision greedy_decision(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                             const NetworkConfig& net, const QosSpec& qos);

}  // namespace shaper
