// Command line front end: derived constants, buffer analytics, gain curves,
// activation decisions, day-profile runs, and the analytic-vs-simulation
// validation suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shaper/scenario.hpp"
#include "shaper/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitValidation = 3;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw shaper::ConfigError(path + ": cannot open for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware traffic shaping for a two-tier cellular network"};
  app.require_subcommand(1);

  std::string config_path, profiles_path, out_json, out_csv;
  double lambda_e = 0.0, mu_e = 0.0, c_ho = 0.0, rho_m = 20.0, rho_s = 60.0;
  int grid = 50;
  long samples = 0;
  std::uint64_t seed = 42;
  std::string suite = "all", policy_name = "both";
  std::vector<double> c_ho_list{0.0};

  auto* cmd_constants = app.add_subcommand("constants", "Derived constants as JSON");
  cmd_constants->add_option("--config", config_path)->required();

  auto* cmd_queue = app.add_subcommand("queue", "Energy buffer analytics as JSON");
  cmd_queue->add_option("--lambda", lambda_e)->required();
  cmd_queue->add_option("--mu", mu_e)->required();
  cmd_queue->add_option("--c-ho", c_ho);

  auto* cmd_gain = app.add_subcommand("gain", "Gain curve along the drain rate as CSV");
  cmd_gain->add_option("--config", config_path)->required();
  cmd_gain->add_option("--lambda", lambda_e)->required();
  cmd_gain->add_option("--c-ho", c_ho)->required();
  cmd_gain->add_option("--grid", grid);

  auto* cmd_optimize = app.add_subcommand("optimize", "Activation decision as JSON");
  cmd_optimize->add_option("--config", config_path)->required();
  cmd_optimize->add_option("--rho-m", rho_m)->required();
  cmd_optimize->add_option("--rho-s", rho_s)->required();
  cmd_optimize->add_option("--lambda", lambda_e)->required();
  cmd_optimize->add_option("--c-ho", c_ho)->required();

  auto* cmd_day = app.add_subcommand("day", "Per-period policy comparison over a profile");
  cmd_day->add_option("--config", config_path)->required();
  cmd_day->add_option("--profiles", profiles_path)->required();
  cmd_day->add_option("--policy", policy_name)
      ->check(CLI::IsMember({"eots", "greedy", "both"}));
  cmd_day->add_option("--c-ho", c_ho_list)->delimiter(',');
  cmd_day->add_option("--json", out_json, "Write the JSON summary to this path");
  cmd_day->add_option("--csv", out_csv, "Write the CSV to this path (default stdout)");

  auto* cmd_validate = app.add_subcommand("validate", "Analytic-vs-simulated table");
  cmd_validate->add_option("--config", config_path);
  cmd_validate->add_option("--suite", suite)
      ->check(CLI::IsMember({"outage", "queue", "rollout", "all"}));
  cmd_validate->add_option("--samples", samples, "Sampling effort override");
  cmd_validate->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (cmd_constants->parsed()) {
      const shaper::Scenario s = shaper::load_config(config_path);
      std::cout << shaper::derived_constants_json(
                       shaper::derive_constants(s.net, s.qos))
                << '\n';
      return kExitOk;
    }

    if (cmd_queue->parsed()) {
      shaper::EnergyConfig energy;
      energy.arrival_rate_per_s = lambda_e;
      energy.unit_joules = 1.0;
      energy.handover_cost_j = c_ho;
      validate(energy);
      const shaper::QueueAnalytics q = shaper::analyze_queue(energy, mu_e);
      std::cout << shaper::queue_analytics_json(q, lambda_e, mu_e, c_ho) << '\n';
      return kExitOk;
    }

    if (cmd_gain->parsed()) {
      const shaper::Scenario s = shaper::load_config(config_path);
      std::cout << shaper::gain_curve_csv(s, lambda_e, c_ho, grid);
      return kExitOk;
    }

    if (cmd_optimize->parsed()) {
      shaper::Scenario s = shaper::load_config(config_path);
      s.traffic.macro_density_per_m2 = rho_m * 1e-6;
      s.traffic.sc_density_per_m2 = rho_s * 1e-6;
      s.energy.arrival_rate_per_s = lambda_e;
      s.energy.handover_cost_j = c_ho;
      const shaper::EotsDecision d =
          shaper::eots_decision(s.traffic, s.energy, s.net, s.qos);
      std::cout << shaper::decision_json(d) << '\n';
      return kExitOk;
    }

    if (cmd_day->parsed()) {
      const shaper::Scenario s = shaper::load_config(config_path);
      const shaper::DailyProfiles profiles = shaper::load_profiles(profiles_path);
      const shaper::Policy policy = policy_name == "eots"     ? shaper::Policy::Eots
                                    : policy_name == "greedy" ? shaper::Policy::Greedy
                                                              : shaper::Policy::Both;
      const shaper::DayReport report = shaper::run_day(profiles, s, policy, c_ho_list);
      write_output(shaper::day_report_csv(report), out_csv);
      if (!out_json.empty()) write_output(shaper::day_report_json(report), out_json);
      return report.infeasible_periods > 0 ? kExitInfeasible : kExitOk;
    }

    if (cmd_validate->parsed()) {
      shaper::Scenario s;
      if (!config_path.empty()) {
        s = shaper::load_config(config_path);
      } else {
        // Shipped defaults: radio parameters of data/table1.cfg.
        s = shaper::parse_config(
            "macro.d_m_m=1000\nmacro.p_0m_w=130\nmacro.p_tm_w=20\nmacro.beta_m=4.7\n"
            "macro.alpha_m=3.5\nmacro.w_m_hz=10e6\nmacro.theta_m=1000\n"
            "sc.d_s_m=300\nsc.p_0s_w=56\nsc.p_ts_w=6.3\nsc.beta_s=2.6\nsc.alpha_s=4\n"
            "sc.w_s_hz=10e6\nsc.theta_s=2000\nsc.d_ms_m=600\n"
            "qos.rate_threshold_bps=100e3\nqos.eta=0.05\nqos.noise_dbm_per_mhz=-105\n"
            "energy.e_j=1\n",
            "<builtin>");
      }
      std::vector<shaper::CheckRow> rows;
      auto extend = [&rows](std::vector<shaper::CheckRow> more) {
        rows.insert(rows.end(), more.begin(), more.end());
      };
      if (suite == "queue" || suite == "all")
        extend(shaper::validate_queue(samples > 0 ? samples : 1000000, seed));
      if (suite == "outage" || suite == "all")
        extend(shaper::validate_outage(s, samples > 0 ? samples : 20000, seed));
      if (suite == "rollout" || suite == "all")
        extend(shaper::validate_rollout(s, samples > 0 ? samples : 100000, seed));
      std::cout << shaper::render_check_table(rows);
      const bool ok = shaper::all_pass(rows);
      std::cout << (ok ? "all checks passed\n" : "one or more checks FAILED\n");
      return ok ? kExitOk : kExitValidation;
    }
  } catch (const shaper::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const shaper::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const shaper::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
