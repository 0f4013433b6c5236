#include "shaper/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shaper/parallel.hpp"

namespace shaper {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(where + ": empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw ConfigError(where + ": not a finite number: '" + t + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::set<std::string> kOptionalKeys = {
    "energy.lambda_e_per_s", "energy.c_ho_j",
    "traffic.rho_m_per_km2", "traffic.rho_s_per_km2",
};

const std::set<std::string> kRequiredKeys = {
    "macro.d_m_m",  "macro.p_0m_w", "macro.p_tm_w", "macro.beta_m",
    "macro.alpha_m", "macro.w_m_hz", "macro.theta_m",
    "sc.d_s_m",     "sc.p_0s_w",    "sc.p_ts_w",    "sc.beta_s",
    "sc.alpha_s",   "sc.w_s_hz",    "sc.theta_s",   "sc.d_ms_m",
    "qos.rate_threshold_bps", "qos.eta", "qos.noise_dbm_per_mhz",
    "energy.e_j",
};

}  // namespace

Scenario parse_config(const std::string& text, const std::string& origin) {
  std::map<std::string, double> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    if (!kRequiredKeys.count(key) && !kOptionalKeys.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    kv[key] = parse_number(t.substr(eq + 1), where + " (" + key + ")");
  }
  for (const auto& key : kRequiredKeys)
    if (!kv.count(key)) throw ConfigError(origin + ": missing key '" + key + "'");

  auto get = [&](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  Scenario s;
  s.net.macro.coverage_radius_m = kv["macro.d_m_m"];
  s.net.macro.static_power_w = kv["macro.p_0m_w"];
  s.net.macro.tx_power_w = kv["macro.p_tm_w"];
  s.net.macro.amp_inefficiency = kv["macro.beta_m"];
  s.net.macro.pathloss_exp = kv["macro.alpha_m"];
  s.net.macro.bandwidth_hz = kv["macro.w_m_hz"];
  s.net.macro.interference_factor = kv["macro.theta_m"];
  s.net.sc.coverage_radius_m = kv["sc.d_s_m"];
  s.net.sc.static_power_w = kv["sc.p_0s_w"];
  s.net.sc.tx_power_w = kv["sc.p_ts_w"];
  s.net.sc.amp_inefficiency = kv["sc.beta_s"];
  s.net.sc.pathloss_exp = kv["sc.alpha_s"];
  s.net.sc.bandwidth_hz = kv["sc.w_s_hz"];
  s.net.sc.interference_factor = kv["sc.theta_s"];
  s.net.sc.macro_sc_distance_m = kv["sc.d_ms_m"];
  s.qos.rate_threshold_bps = kv["qos.rate_threshold_bps"];
  s.qos.outage_target = kv["qos.eta"];
  s.qos.noise_density_w_per_hz = noise_dbm_per_mhz_to_w_per_hz(kv["qos.noise_dbm_per_mhz"]);
  s.energy.unit_joules = kv["energy.e_j"];
  s.energy.arrival_rate_per_s = get("energy.lambda_e_per_s", 0.0);
  s.energy.handover_cost_j = get("energy.c_ho_j", 0.0);
  s.traffic.macro_density_per_m2 = get("traffic.rho_m_per_km2", 20.0) * 1e-6;
  s.traffic.sc_density_per_m2 = get("traffic.rho_s_per_km2", 60.0) * 1e-6;

  validate(s.net);
  validate(s.qos);
  validate(s.energy);
  validate(s.traffic);
  return s;
}

Scenario load_config(const std::string& path) {
  return parse_config(read_file(path), path);
}

DailyProfiles parse_profiles(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(origin + ": empty profile file");
  if (trim(line) != "start_s,duration_s,rho_m_per_km2,rho_s_per_km2,lambda_e_per_s")
    throw ConfigError(origin + ": unexpected header '" + trim(line) + "'");

  DailyProfiles p;
  p.label = origin;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::vector<double> cols;
    std::istringstream row(t);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(parse_number(cell, where));
    if (cols.size() != 5) throw ConfigError(where + ": expected 5 columns");
    ProfilePeriod period{cols[0], cols[1], cols[2], cols[3], cols[4]};
    if (!(period.duration_s > 0.0)) throw ConfigError(where + ": duration_s must be > 0");
    if (period.rho_m_per_km2 < 0.0 || period.rho_s_per_km2 < 0.0 ||
        period.lambda_e_per_s < 0.0)
      throw ConfigError(where + ": densities and rates must be >= 0");
    if (!p.periods.empty()) {
      const auto& prev = p.periods.back();
      const double expected = prev.start_s + prev.duration_s;
      const double tol = 1e-9 * std::max(1.0, std::abs(expected));
      if (std::abs(period.start_s - expected) > tol)
        throw ConfigError(where + ": periods must be contiguous (expected start_s=" +
                          format_double(expected) + ")");
    }
    p.periods.push_back(period);
  }
  if (p.periods.empty()) throw ConfigError(origin + ": no periods");
  return p;
}

DailyProfiles load_profiles(const std::string& path) {
  return parse_profiles(read_file(path), path);
}

namespace {

TrafficSnapshot period_traffic(const ProfilePeriod& p) {
  return {p.rho_m_per_km2 * 1e-6, p.rho_s_per_km2 * 1e-6};
}

PeriodRecord record_for(const EotsDecision& d, double c_ho, int period,
                        const std::string& policy) {
  PeriodRecord r;
  r.c_ho_j = c_ho;
  r.period = period;
  r.policy = policy;
  r.feasible = true;
  r.activate_sc = d.activate_sc;
  r.mu_e_per_s = d.mu_e_per_s;
  r.phi = d.operating.offload_fraction;
  r.p_off = d.activate_sc && d.operating.queue.stable
                ? d.operating.queue.off_probability
                : (d.activate_sc ? 0.0 : 1.0);
  r.delta_p_w = d.predicted_gain_w;
  return r;
}

}  // namespace

DayReport run_day(const DailyProfiles& profiles, const Scenario& scenario, Policy policy,
                  const std::vector<double>& c_ho_list) {
  DayReport report;
  report.periods = static_cast<int>(profiles.periods.size());
  const bool want_eots = policy != Policy::Greedy;
  const bool want_greedy = policy != Policy::Eots;

  for (double c_ho : c_ho_list) {
    DayAggregate agg;
    agg.c_ho_j = c_ho;
    const long n = static_cast<long>(profiles.periods.size());

    // Periods are independent; evaluate them on the worker pool and merge in
    // period order.
    struct PeriodOutcome {
      std::vector<PeriodRecord> records;
      double eots_weighted = 0.0, greedy_weighted = 0.0;
      double eots_dur = 0.0, greedy_dur = 0.0;
      int infeasible = 0;
    };
    std::vector<PeriodOutcome> outcomes(profiles.periods.size());
    parallel_for_indexed(n, [&](long i) {
      const ProfilePeriod& period = profiles.periods[i];
      PeriodOutcome& out = outcomes[i];
      EnergyConfig energy = scenario.energy;
      energy.arrival_rate_per_s = period.lambda_e_per_s;
      energy.handover_cost_j = c_ho;
      const TrafficSnapshot traffic = period_traffic(period);
      auto run_policy = [&](bool greedy) {
        const std::string name = greedy ? "greedy" : "eots";
        try {
          const EotsDecision d =
              greedy ? greedy_decision(traffic, energy, scenario.net, scenario.qos)
                     : eots_decision(traffic, energy, scenario.net, scenario.qos);
          out.records.push_back(record_for(d, c_ho, static_cast<int>(i), name));
          (greedy ? out.greedy_weighted : out.eots_weighted) +=
              d.predicted_gain_w * period.duration_s;
          (greedy ? out.greedy_dur : out.eots_dur) += period.duration_s;
        } catch (const InfeasibleError&) {
          PeriodRecord r;
          r.c_ho_j = c_ho;
          r.period = static_cast<int>(i);
          r.policy = name;
          r.feasible = false;
          out.records.push_back(r);
          ++out.infeasible;
        }
      };
      if (want_eots) run_policy(false);
      if (want_greedy) run_policy(true);
    });

    double eots_sum = 0.0, greedy_sum = 0.0, eots_dur = 0.0, greedy_dur = 0.0;
    for (const PeriodOutcome& out : outcomes) {
      report.records.insert(report.records.end(), out.records.begin(),
                            out.records.end());
      eots_sum += out.eots_weighted;
      greedy_sum += out.greedy_weighted;
      eots_dur += out.eots_dur;
      greedy_dur += out.greedy_dur;
      agg.infeasible_periods += out.infeasible;
      report.infeasible_periods += out.infeasible;
    }
    if (want_eots && eots_dur > 0.0) agg.avg_gain_eots_w = eots_sum / eots_dur;
    if (want_greedy && greedy_dur > 0.0) agg.avg_gain_greedy_w = greedy_sum / greedy_dur;
    report.aggregates.push_back(agg);
  }
  return report;
}

std::string day_report_csv(const DayReport& report) {
  std::string out = "c_ho_j,period,policy,status,activate_sc,mu_e_per_s,phi,p_off,delta_p_w\n";
  for (const auto& r : report.records) {
    out += format_double(r.c_ho_j);
    out += ',' + std::to_string(r.period) + ',' + r.policy + ',';
    if (!r.feasible) {
      out += "macro_infeasible,,,,,\n";
      continue;
    }
    out += "ok,";
    out += r.activate_sc ? "1," : "0,";
    out += format_double(r.mu_e_per_s) + ',' + format_double(r.phi) + ',' +
           format_double(r.p_off) + ',' + format_double(r.delta_p_w) + '\n';
  }
  return out;
}

std::string day_report_json(const DayReport& report) {
  nlohmann::json j;
  j["periods"] = report.periods;
  j["infeasible_periods"] = report.infeasible_periods;
  j["aggregates"] = nlohmann::json::array();
  for (const auto& a : report.aggregates) {
    nlohmann::json row;
    row["c_ho_j"] = a.c_ho_j;
    row["avg_gain_eots_w"] =
        a.avg_gain_eots_w ? nlohmann::json(*a.avg_gain_eots_w) : nlohmann::json();
    row["avg_gain_greedy_w"] =
        a.avg_gain_greedy_w ? nlohmann::json(*a.avg_gain_greedy_w) : nlohmann::json();
    row["infeasible_periods"] = a.infeasible_periods;
    j["aggregates"].push_back(row);
  }
  return j.dump(2);
}

std::string sweep_gain_csv(const Scenario& scenario,
                           const std::vector<double>& lambda_grid,
                           const std::vector<double>& c_ho_list) {
  if (lambda_grid.empty()) throw DomainError("sweep_gain_csv: empty grid");
  std::string out = "lambda_e_per_s,c_ho_j,mu_e_per_s,delta_p_closed_w,delta_p_pipeline_w\n";
  for (double c_ho : c_ho_list) {
    for (double lambda : lambda_grid) {
      EnergyConfig energy = scenario.energy;
      energy.arrival_rate_per_s = lambda;
      energy.handover_cost_j = c_ho;
      const ActiveOptimum best =
          best_active_gain(scenario.traffic, energy, scenario.net, scenario.qos);
      out += format_double(lambda) + ',' + format_double(c_ho) + ',' +
             format_double(best.mu_e_per_s) + ',' +
             format_double(best.gain_closed.total_gain_w) + ',' +
             format_double(best.gain.total_gain_w) + '\n';
    }
  }
  return out;
}

std::string gain_curve_csv(const Scenario& scenario, double lambda_e, double c_ho,
                           int grid_points) {
  if (grid_points < 2) throw DomainError("gain_curve_csv: need at least 2 grid points");
  EnergyConfig energy = scenario.energy;
  energy.arrival_rate_per_s = lambda_e;
  energy.handover_cost_j = c_ho;
  const DerivedConstants consts = derive_constants(scenario.net, scenario.qos);
  const MuRange range =
      feasible_mu_range(energy, scenario.net, scenario.qos, consts, scenario.traffic);

  std::string out = "mu_e,delta_p_closed_w,delta_p_pipeline_w,p_off,p_ho_w\n";
  for (int i = 0; i < grid_points; ++i) {
    const double mu =
        range.lo + (range.hi - range.lo) * static_cast<double>(i) / (grid_points - 1);
    const GainReport closed = total_gain(mu, energy, consts, scenario.traffic,
                                         scenario.net, scenario.qos, GainForm::Closed);
    const GainReport pipeline = total_gain(mu, energy, consts, scenario.traffic,
                                           scenario.net, scenario.qos, GainForm::Pipeline);
    const QueueAnalytics q = analyze_queue(energy, mu);
    out += format_double(mu) + ',' + format_double(closed.total_gain_w) + ',' +
           format_double(pipeline.total_gain_w) + ',' +
           format_double(q.stable ? q.off_probability : 0.0) + ',' +
           format_double(q.handover_power_w) + '\n';
  }
  return out;
}

namespace {

const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::EnergySufficientLinear: return "energy_sufficient_linear";
    case RegimeTag::MonotoneIncreasing: return "monotone_increasing";
    case RegimeTag::MonotoneDecreasing: return "monotone_decreasing";
    case RegimeTag::InteriorConcave: return "interior_concave";
  }
  return "?";
}

nlohmann::json queue_json(const QueueAnalytics& q) {
  return {{"utilization", q.utilization},
          {"off_probability", q.off_probability},
          {"p_one", q.p_one},
          {"shutdown_rate_per_s", q.shutdown_rate_per_s},
          {"handover_power_w", q.handover_power_w},
          {"stable", q.stable}};
}

}  // namespace

std::string derived_constants_json(const DerivedConstants& c) {
  const nlohmann::json j = {{"tau_ssu", c.tau_ssu},
                            {"tau_msu", c.tau_msu},
                            {"tau_mmu", c.tau_mmu},
                            {"zeta_ee", c.zeta_ee},
                            {"kappa_w", c.kappa_w}};
  return j.dump(2);
}

std::string queue_analytics_json(const QueueAnalytics& q, double lambda_e, double mu_e,
                                 double c_ho) {
  nlohmann::json j = queue_json(q);
  j["lambda_e_per_s"] = lambda_e;
  j["mu_e_per_s"] = mu_e;
  j["c_ho_j"] = c_ho;
  return j.dump(2);
}

std::string decision_json(const EotsDecision& d) {
  nlohmann::json j;
  j["activate_sc"] = d.activate_sc;
  j["mu_e_per_s"] = d.mu_e_per_s;
  j["predicted_gain_w"] = d.predicted_gain_w;
  j["gain_form"] = d.gain.form == GainForm::Pipeline ? "pipeline" : "closed";
  j["regime"] = {{"tag", regime_name(d.regime.tag)},
                 {"kappa_w", d.regime.kappa_w},
                 {"upper_threshold_w", d.regime.upper_threshold_w},
                 {"lower_threshold_w", d.regime.lower_threshold_w}};
  j["operating"] = {{"sc_active", d.operating.sc_active},
                    {"mu_e_per_s", d.operating.mu_e_per_s},
                    {"w_ss_hz", d.operating.w_ss_hz},
                    {"offload_fraction", d.operating.offload_fraction},
                    {"w_mm_hz", d.operating.w_mm_hz},
                    {"w_msa_hz", d.operating.w_msa_hz},
                    {"w_mso_hz", d.operating.w_mso_hz},
                    {"queue", queue_json(d.operating.queue)}};
  j["gain"] = {{"rf_gain_w", d.gain.rf_gain_w},
               {"total_gain_w", d.gain.total_gain_w},
               {"p_active_w", d.gain.p_active_w},
               {"p_off_w", d.gain.p_off_w}};
  return j.dump(2);
}

}  // namespace shaper
