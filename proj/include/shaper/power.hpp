#pragma once

#include "shaper/energy_queue.hpp"
#include "shaper/model.hpp"

namespace shaper {

enum class BsMode { Active, Sleep };

enum class GainForm { Closed, Pipeline };

/// A complete per-period bandwidth/offloading/power state.
struct OperatingPoint {
  bool sc_active = false;
  double mu_e_per_s = 0.0;       // energy consumption rate of the small cell
  double w_ss_hz = 0.0;          // bandwidth utilized at the small cell
  double offload_fraction = 0.0; // share of SC-area users served by the SC
  double w_mm_hz = 0.0;          // macro bandwidth for macro-only users
  double w_msa_hz = 0.0;         // macro bandwidth for SC-area users kept on the macro
  double w_mso_hz = 0.0;         // extra macro bandwidth while the SC sleeps
  QueueAnalytics queue;
};

struct MacroBandwidths {
  double w_mm_hz = 0.0;
  double w_msa_hz = 0.0;
  double w_mso_hz = 0.0;
  double total() const { return w_mm_hz + w_msa_hz + w_mso_hz; }
};

struct OffloadFraction {
  double raw = 0.0;    // before clamping; may leave [0,1]
  double value = 0.0;  // clamped to [0,1]
};

/// On-grid draw comparison between running with the SC active versus off.
struct GainReport {
  double rf_gain_w = 0.0;     // radio-frequency power saved at the macro
  double total_gain_w = 0.0;  // rf gain minus handover power
  double p_active_w = 0.0;    // mean on-grid power with the SC offloading
  double p_off_w = 0.0;       // on-grid power with the SC shut down
  GainForm form = GainForm::Pipeline;
};

/// Load-proportional base station power: active -> P_0 + (w/W)*beta*P_T,
/// sleep -> 0.
double bs_power(double static_w, double amp_inefficiency, double tx_power_w,
                double utilized_bw_hz, double total_bw_hz, BsMode mode);

/// Bandwidth the SC can drive at drain rate mu_E: w = W_s*(mu_E*E - P_0s)/(beta_s*P_Ts).
/// Throws InfeasibleError when mu_E*E does not cover the static power.
double sc_bandwidth_from_rate(double mu_e_per_s, const EnergyConfig& energy,
                              const SmallCellConfig& sc);

/// Largest share of SC-area users servable on w_ss:
/// raw = (tau_ssu*w_ss/R_th - 1)/(rho_s*pi*D_s^2), clamped to [0,1].
/// With no SC-area users the share is 1 when a single user could be served, else 0.
OffloadFraction offload_fraction(double w_ss_hz, const TrafficSnapshot& traffic,
                                 const QosSpec& qos, const DerivedConstants& consts,
                                 const NetworkConfig& net);

/// Macro-side bandwidth shares for a given offload split. When enforce_feasible
/// is set, throws InfeasibleError if the macro band cannot host all three.
MacroBandwidths macro_bandwidths(double phi, const TrafficSnapshot& traffic,
                                 const QosSpec& qos, const DerivedConstants& consts,
                                 const NetworkConfig& net, bool enforce_feasible = true);

/// Builds the full pipeline state for a drain rate (projected onto the
/// feasible range): SC bandwidth, offload share (re-shrinking w_ss when every
/// SC-area user is already served), buffer analytics, macro bandwidths.
OperatingPoint make_operating_point(double mu_e_per_s, const TrafficSnapshot& traffic,
                                    const EnergyConfig& energy, const NetworkConfig& net,
                                    const QosSpec& qos, const DerivedConstants& consts,
                                    bool enforce_macro_feasible = true);

/// Mean on-grid power with the SC offloading:
/// P_0m + beta_m*(P_Tm/W_m)*(w_mm + w_msa + p_off*w_mso) + P_ho.
double ongrid_power_active(const OperatingPoint& op, const NetworkConfig& net,
                           const EnergyConfig& energy);

/// On-grid power with the SC off: P_0m + beta_m*(P_Tm/W_m)*(w_mm + w_msa + w_mso)
/// evaluated at phi = 0.
double ongrid_power_sc_off(const TrafficSnapshot& traffic, const NetworkConfig& net,
                           const QosSpec& qos, const DerivedConstants& consts);

/// Closed-form radio-frequency gain, piecewise in the drain rate:
///   mu <= lambda: zeta_ee*mu*E - kappa
///   mu >  lambda: zeta_ee*lambda*E - (lambda/mu)*kappa.
double rf_gain_closed_form(double mu_e_per_s, const EnergyConfig& energy,
                           const DerivedConstants& consts);

/// On-grid power saving of activating the SC at drain rate mu_E, net of
/// handover power. The pipeline form evaluates the bandwidth accounting end
/// to end; the closed form uses rf_gain_closed_form. With no SC-area users
/// the gain is the (non-positive) handover term alone.
GainReport total_gain(double mu_e_per_s, const EnergyConfig& energy,
                      const DerivedConstants& consts, const TrafficSnapshot& traffic,
                      const NetworkConfig& net, const QosSpec& qos, GainForm form);

}  // namespace shaper
