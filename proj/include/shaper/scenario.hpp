#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shaper/eots.hpp"

namespace shaper {

/// A fully validated configuration: radio, QoS, energy, and default traffic.
struct Scenario {
  NetworkConfig net;
  QosSpec qos;
  EnergyConfig energy;
  TrafficSnapshot traffic;
};

/// Reads the dotted-key configuration format (`macro.d_m_m = 1000`, `#`
/// comments). Unknown keys are rejected, missing keys named, noise entered in
/// dBm/MHz and stored in W/Hz. See the README for the full key list.
Scenario load_config(const std::string& path);
Scenario parse_config(const std::string& text, const std::string& origin = "<string>");

struct ProfilePeriod {
  double start_s = 0.0;
  double duration_s = 0.0;
  double rho_m_per_km2 = 0.0;
  double rho_s_per_km2 = 0.0;
  double lambda_e_per_s = 0.0;
};

/// Ordered, contiguous, non-overlapping periods of one day (or any horizon).
struct DailyProfiles {
  std::vector<ProfilePeriod> periods;
  std::string label;
};

/// CSV with header start_s,duration_s,rho_m_per_km2,rho_s_per_km2,lambda_e_per_s.
DailyProfiles load_profiles(const std::string& path);
DailyProfiles parse_profiles(const std::string& text, const std::string& origin = "<string>");

enum class Policy { Eots, Greedy, Both };

struct PeriodRecord {
  double c_ho_j = 0.0;
  int period = 0;
  std::string policy;  // "eots" | "greedy"
  bool feasible = true;
  bool activate_sc = false;
  double mu_e_per_s = 0.0;
  double phi = 0.0;
  double p_off = 0.0;
  double delta_p_w = 0.0;
};

struct DayAggregate {
  double c_ho_j = 0.0;
  std::optional<double> avg_gain_eots_w;    // duration-weighted over feasible periods
  std::optional<double> avg_gain_greedy_w;
  int infeasible_periods = 0;
};

struct DayReport {
  std::vector<PeriodRecord> records;
  std::vector<DayAggregate> aggregates;
  int periods = 0;
  int infeasible_periods = 0;  // summed over policies and handover costs
};

/// Evaluates the chosen policies period by period for every handover cost in
/// the list. Macro-infeasible periods are recorded and skipped in averages.
DayReport run_day(const DailyProfiles& profiles, const Scenario& scenario, Policy policy,
                  const std::vector<double>& c_ho_list);

std::string day_report_csv(const DayReport& report);
std::string day_report_json(const DayReport& report);

/// Gain of the best active operating point per (arrival rate, handover cost),
/// the activation-only counterpart of the on/off decision. CSV columns
/// lambda_e_per_s,c_ho_j,mu_e_per_s,delta_p_closed_w,delta_p_pipeline_w.
std::string sweep_gain_csv(const Scenario& scenario,
                           const std::vector<double>& lambda_grid,
                           const std::vector<double>& c_ho_list);

/// Both gain forms along the drain-rate axis at fixed arrival rate. CSV
/// columns mu_e,delta_p_closed_w,delta_p_pipeline_w,p_off,p_ho_w.
std::string gain_curve_csv(const Scenario& scenario, double lambda_e, double c_ho,
                           int grid_points);

/// Shortest round-trip decimal text for a double, locale-independent.
std::string format_double(double v);

std::string derived_constants_json(const DerivedConstants& c);
std::string queue_analytics_json(const QueueAnalytics& q, double lambda_e, double mu_e,
                                 double c_ho);
std::string decision_json(const EotsDecision& d);

}  // namespace shaper
