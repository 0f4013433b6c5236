// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line. Run with no arguments for all criteria or pass
// c<N> to run one. Exit status is the number of failed criteria.
//
// c3 compares the at-site closed form for macro-served cell users against an
// exact-placement Monte Carlo; the placement approximation overshoots the
// +-0.02 band at 1 MHz (measured gaps ~+0.04/+0.05/+0.02 for 400/600/800 m),
// so that criterion documents a known model gap rather than a code defect.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "shaper/eots.hpp"
#include "shaper/rng.hpp"
#include "shaper/scenario.hpp"
#include "shaper/sim.hpp"
#include "shaper/validate.hpp"

using namespace shaper;

namespace {

constexpr std::uint64_t kSeed = 20240817;

Scenario reference() { return load_config(std::string(SHAPER_DATA_DIR) + "/table1.cfg"); }

Scenario reference_feasible() {
  Scenario s = reference();
  s.traffic.macro_density_per_m2 = 5e-6;
  return s;
}

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Criterion {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

// ---------------------------------------------------------------- criterion 1
Criterion c1_queue_oracle() {
  Criterion c;
  for (double rho : {0.3, 0.5, 0.7, 0.9}) {
    EnergyConfig energy{rho, 1.0, 1.0};
    const QueueAnalytics q = analyze_queue(energy, 1.0);
    const double t0 = now_s();
    const QueueTrace t = simulate_energy_queue(rho, 1.0, 1000000,
                                               kSeed + static_cast<int>(rho * 10));
    const double elapsed = now_s() - t0;
    const std::string tag = "rho=" + format_double(rho);
    c.require(std::abs(t.empirical_p_off - q.off_probability) <= 0.01,
              tag + " p_off " + format_double(t.empirical_p_off) + " vs " +
                  format_double(q.off_probability));
    c.require(std::abs(t.empirical_p_one - q.p_one) <= 0.01,
              tag + " p_one " + format_double(t.empirical_p_one) + " vs " +
                  format_double(q.p_one));
    c.require(std::abs(t.empirical_shutdown_rate - q.shutdown_rate_per_s) <=
                  0.05 * q.shutdown_rate_per_s,
              tag + " shutdown " + format_double(t.empirical_shutdown_rate) + " vs " +
                  format_double(q.shutdown_rate_per_s));
    c.require(elapsed < 10.0, tag + " runtime " + format_double(elapsed) + "s");
  }
  return c;
}

// ---------------------------------------------------------------- criterion 2
Criterion c2_ssu_outage() {
  Criterion c;
  const Scenario s = reference();
  const DerivedConstants consts = derive_constants(s.net, s.qos);
  const double t0 = now_s();
  for (double phi : {0.25, 0.5, 1.0}) {
    const double w = required_bandwidth(
        UserClass::Ssu, expected_user_count(UserClass::Ssu, s.traffic, s.net, phi),
        s.qos, consts);
    const OutageEstimate est =
        estimate_outage(UserClass::Ssu, s.net, s.qos, s.traffic, phi, w, 20000, kSeed + 20);
    c.require(std::abs(est.probability - s.qos.outage_target) <= 0.02,
              "phi=" + format_double(phi) + " outage " + format_double(est.probability));
  }
  c.require(now_s() - t0 < 5.0, "runtime");
  return c;
}

// ---------------------------------------------------------------- criterion 3
Criterion c3_msu_outage() {
  Criterion c;
  Scenario s = reference();
  for (double dms : {400.0, 600.0, 800.0}) {
    s.net.sc.macro_sc_distance_m = dms;
    const double closed = msu_outage_closed_form(s.net, s.qos, s.traffic, 0.0, 1e6);
    const OutageEstimate mc =
        estimate_outage(UserClass::Msu, s.net, s.qos, s.traffic, 0.0, 1e6, 200000,
                        kSeed + 30, MsuPlacement::ExactDisc);
    c.require(std::abs(mc.probability - closed) <= 0.02,
              "d_ms=" + format_double(dms) + " closed " + format_double(closed) +
                  " vs exact-placement " + format_double(mc.probability));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 4
Criterion c4_mmu_outage() {
  Criterion c;
  const Scenario s = reference();
  const DerivedConstants consts = derive_constants(s.net, s.qos);
  const double w = required_bandwidth(
      UserClass::Mmu, expected_user_count(UserClass::Mmu, s.traffic, s.net, 0.0), s.qos,
      consts);
  const OutageEstimate est =
      estimate_outage(UserClass::Mmu, s.net, s.qos, s.traffic, 0.0, w, 20000, kSeed + 40);
  c.require(std::abs(est.probability - s.qos.outage_target) <= 0.02,
            "outage " + format_double(est.probability));
  return c;
}

// ---------------------------------------------------------------- criterion 5
Criterion c5_gain_identity() {
  Criterion c;
  const Scenario s = reference();
  const DerivedConstants consts = derive_constants(s.net, s.qos);
  EnergyConfig energy = s.energy;
  energy.handover_cost_j = 0.7;
  const double offset_unit = s.net.macro.amp_inefficiency * s.net.macro.tx_power_w *
                             s.qos.rate_threshold_bps /
                             (s.net.macro.bandwidth_hz * consts.tau_msu);
  // Share-interior grid: from the one-user bandwidth point to the top rate.
  const MuRange range = feasible_mu_range(energy, s.net, s.qos, consts, s.traffic);
  const double mu_lo =
      (s.net.sc.static_power_w +
       s.qos.rate_threshold_bps / (consts.tau_ssu * s.net.sc.bandwidth_hz) *
           s.net.sc.amp_inefficiency * s.net.sc.tx_power_w) /
      energy.unit_joules;
  for (double lambda : {40.0, 62.0}) {
    energy.arrival_rate_per_s = lambda;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double mu = mu_lo + (range.hi - mu_lo) * i / 999.0;
      const double closed =
          total_gain(mu, energy, consts, s.traffic, s.net, s.qos, GainForm::Closed)
              .total_gain_w;
      const double pipeline =
          total_gain(mu, energy, consts, s.traffic, s.net, s.qos, GainForm::Pipeline)
              .total_gain_w;
      const double p_off = mu > lambda ? 1.0 - lambda / mu : 0.0;
      const double err = std::abs(closed + (1.0 - p_off) * offset_unit - pipeline) /
                         std::max(1.0, std::abs(pipeline));
      worst = std::max(worst, err);
    }
    c.require(worst <= 1e-9,
              "lambda=" + format_double(lambda) + " worst rel err " + format_double(worst));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 6
Criterion c6_regimes() {
  Criterion c;
  const Scenario base = reference_feasible();
  const DerivedConstants consts = derive_constants(base.net, base.qos);
  Philox4x32 gen(kSeed + 60, 0);
  const double e_bound = 1.0 - 1.0 / std::numbers::e;

  auto closed_gain = [&](const EnergyConfig& energy, double mu) {
    return total_gain(mu, energy, consts, base.traffic, base.net, base.qos,
                      GainForm::Closed)
        .total_gain_w;
  };

  // Shape checks on a 10^4-point drain-rate grid, 100 instances per regime.
  const int n = 10000;
  for (int trial = 0; trial < 100; ++trial) {
    EnergyConfig energy = base.energy;
    energy.arrival_rate_per_s = 20.0 + 40.0 * gen.uniform01();
    const double lambda = energy.arrival_rate_per_s;
    const MuRange range =
        feasible_mu_range(energy, base.net, base.qos, consts, base.traffic);

    // Monotone increasing: kappa >= 3*lambda*C.
    energy.handover_cost_j = consts.kappa_w / (3.0 * lambda) * (0.2 + 0.8 * gen.uniform01());
    double prev = closed_gain(energy, range.lo);
    bool inc_ok = true;
    for (int i = 1; i <= n; ++i) {
      const double mu = range.lo + (range.hi - range.lo) * i / n;
      const double y = closed_gain(energy, mu);
      inc_ok &= y >= prev - 1e-9;
      prev = y;
    }
    c.require(inc_ok, "increasing regime violated at trial " + std::to_string(trial));

    // Monotone decreasing past the arrival rate: kappa <= (1-1/e)*lambda*C.
    energy.handover_cost_j =
        consts.kappa_w / (e_bound * lambda) * (1.0 + 2.0 * gen.uniform01());
    bool dec_ok = true;
    prev = closed_gain(energy, std::max(range.lo, lambda));
    for (int i = 1; i <= n; ++i) {
      const double lo = std::max(range.lo, lambda);
      if (lo >= range.hi) break;
      const double mu = lo + (range.hi - lo) * i / n;
      const double y = closed_gain(energy, mu);
      dec_ok &= y <= prev + 1e-9;
      prev = y;
    }
    c.require(dec_ok, "decreasing regime violated at trial " + std::to_string(trial));

    // Interior band: concavity of the gain in the utilization.
    energy.handover_cost_j =
        consts.kappa_w / lambda / (e_bound + (3.0 - e_bound) * gen.uniform01());
    bool concave_ok = true;
    const double rho_lo = lambda / range.hi;
    if (rho_lo < 0.95) {
      const int m = 400;
      std::vector<double> y;
      for (int i = 0; i <= m; ++i) {
        const double rho = rho_lo + (0.999 - rho_lo) * i / m;
        y.push_back(closed_gain(energy, lambda / rho));
      }
      const double scale = 1.0;
      for (int i = 1; i + 1 <= m; ++i)
        concave_ok &= y[i + 1] - 2.0 * y[i] + y[i - 1] <= 1e-9 * scale;
    }
    c.require(concave_ok, "concavity violated at trial " + std::to_string(trial));
  }

  // Bisection against a grid argmax of the objective whose stationarity it
  // solves (single handover weight), and the doubled weight against the
  // two-per-cycle gain shape, 100 randomized interior instances each.
  auto sleep_share = [](double rho) { return (1.0 - rho) * (-std::expm1(-rho)) / rho; };
  for (int trial = 0; trial < 100; ++trial) {
    const double lambda = 0.5 + 49.5 * gen.uniform01();
    const double c_ho = 0.1 + 4.9 * gen.uniform01();
    for (double weight : {1.0, 2.0}) {
      const double lo = weight * e_bound + 1e-3;
      const double hi = weight * 1.5 - 1e-3;
      const double kappa = lambda * c_ho * (lo + (hi - lo) * gen.uniform01());
      const double root = solve_optimal_rho(kappa, lambda, weight * c_ho);
      double best_rho = 0.0, best = -1e300;
      for (int i = 1; i < n; ++i) {
        const double rho = static_cast<double>(i) / n;
        const double v = -kappa * rho - weight * lambda * c_ho * sleep_share(rho);
        if (v > best) {
          best = v;
          best_rho = rho;
        }
      }
      c.require(std::abs(root - best_rho) <= 1.5 / n,
                "argmax mismatch weight=" + format_double(weight) + " root " +
                    format_double(root) + " grid " + format_double(best_rho));
    }
  }
  return c;
}

// ---------------------------------------------------------------- criterion 7
Criterion c7_continuity_endpoints() {
  Criterion c;
  const Scenario s = reference();
  const DerivedConstants consts = derive_constants(s.net, s.qos);
  EnergyConfig energy = s.energy;

  // Both closed-form branches at the branch point.
  for (double lambda : {20.0, 57.0, 68.0}) {
    energy.arrival_rate_per_s = lambda;
    const double low_branch = consts.zeta_ee * lambda * energy.unit_joules - consts.kappa_w;
    const double high_branch = consts.zeta_ee * lambda * energy.unit_joules -
                               (lambda / lambda) * consts.kappa_w;
    c.require(std::abs(low_branch - high_branch) <=
                  1e-12 * std::max(1.0, std::abs(low_branch)),
              "branch mismatch at lambda=" + format_double(lambda));
    c.require(rf_gain_closed_form(lambda, energy, consts) == low_branch,
              "piecewise form disagrees at the knee");
  }

  // Range endpoints: zero utilized band at the bottom; at the top either the
  // full band or the all-users-served bandwidth.
  const MuRange range = feasible_mu_range(energy, s.net, s.qos, consts, s.traffic);
  c.require(sc_bandwidth_from_rate(range.lo, energy, s.net.sc) == 0.0,
            "bottom of the range should carry no bandwidth");
  const double top_w = sc_bandwidth_from_rate(range.hi, energy, s.net.sc);
  const double all_served = required_bandwidth(
      UserClass::Ssu, expected_user_count(UserClass::Ssu, s.traffic, s.net, 1.0), s.qos,
      consts);
  c.require(std::abs(top_w - all_served) <= 1e-12 * all_served,
            "top of the range should serve every cell user: " + format_double(top_w) +
                " vs " + format_double(all_served));

  TrafficSnapshot dense{20e-6, 1000e-6};
  const MuRange full = feasible_mu_range(energy, s.net, s.qos, consts, dense);
  const double full_w = sc_bandwidth_from_rate(full.hi, energy, s.net.sc);
  c.require(std::abs(full_w - s.net.sc.bandwidth_hz) <= 1e-12 * s.net.sc.bandwidth_hz,
            "dense cell should drive the whole band");
  return c;
}

// ---------------------------------------------------------------- criterion 8
Criterion c8_rollout() {
  Criterion c;
  Scenario s = reference_feasible();
  s.energy.arrival_rate_per_s = 40.0;
  s.energy.handover_cost_j = 0.5;
  const EotsDecision d = eots_decision(s.traffic, s.energy, s.net, s.qos);
  c.require(d.activate_sc, "instance should activate");
  const double horizon = 1e5 / s.energy.arrival_rate_per_s;
  const PolicyLedger ledger =
      simulate_policy(s.traffic, s.energy, s.net, s.qos, d, horizon, kSeed + 80);
  const double analytic = ongrid_power_active(d.operating, s.net, s.energy);
  const double mean = ledger.ongrid_energy_j / ledger.horizon_s;
  c.require(std::abs(mean - analytic) <= 0.02 * analytic,
            "mean power " + format_double(mean) + " vs " + format_double(analytic));
  return c;
}

// ---------------------------------------------------------------- criterion 9
Criterion c9_arrival_sweep_shape() {
  Criterion c;
  const Scenario s = reference();
  auto best = [&](double lambda, double c_ho) {
    EnergyConfig energy = s.energy;
    energy.arrival_rate_per_s = lambda;
    energy.handover_cost_j = c_ho;
    return best_active_gain(s.traffic, energy, s.net, s.qos).gain.total_gain_w;
  };

  const int n = 50;
  std::vector<double> with_cost, free_cost;
  for (int i = 0; i < n; ++i) {
    const double lambda = 100.0 * i / (n - 1);
    with_cost.push_back(best(lambda, 1.0));
    free_cost.push_back(best(lambda, 0.0));
  }
  int minima = 0;
  for (int i = 1; i + 1 < n; ++i)
    if (with_cost[i] < with_cost[i - 1] && with_cost[i] < with_cost[i + 1]) ++minima;
  c.require(minima == 1, "expected exactly one local minimum, found " +
                             std::to_string(minima));
  bool nondecreasing = true;
  for (int i = 1; i < n; ++i) nondecreasing &= free_cost[i] >= free_cost[i - 1] - 1e-9;
  c.require(nondecreasing, "free-handover sweep must be nondecreasing");
  c.require(free_cost.front() == 0.0 && std::abs(with_cost.front()) < 1e-12,
            "no harvest must mean no gain");
  return c;
}

// --------------------------------------------------------------- criterion 10
Criterion c10_day_profile() {
  Criterion c;
  const double t0 = now_s();
  const Scenario s = reference();
  const DailyProfiles profiles =
      load_profiles(std::string(SHAPER_DATA_DIR) + "/day24.csv");
  const std::vector<double> costs{0.0, 0.5, 1.0, 2.0, 5.0};
  const DayReport report = run_day(profiles, s, Policy::Both, costs);
  c.require(report.infeasible_periods == 0, "profile must stay feasible");

  bool greedy_negative_somewhere = false;
  for (const auto& agg : report.aggregates) {
    if (!agg.avg_gain_eots_w || !agg.avg_gain_greedy_w) {
      c.require(false, "missing aggregate at c_ho=" + format_double(agg.c_ho_j));
      continue;
    }
    const double e = *agg.avg_gain_eots_w;
    const double g = *agg.avg_gain_greedy_w;
    if (agg.c_ho_j == 0.0)
      c.require(std::abs(e - g) <= 1e-6 * std::abs(e),
                "free handovers must tie the policies");
    c.require(e >= g - 1e-12, "policy dominance violated at c_ho=" +
                                  format_double(agg.c_ho_j));
    c.require(e >= 0.0, "the decision may never lose power");
    if (g < 0.0) greedy_negative_somewhere = true;
  }
  c.require(greedy_negative_somewhere,
            "some swept handover cost must drive greedy negative");
  c.require(now_s() - t0 < 60.0, "runtime");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    const char* name;
    const char* summary;
    Criterion (*run)();
  };
  const Entry entries[] = {
      {"c1", "buffer event simulation matches the closed forms", c1_queue_oracle},
      {"c2", "offloaded-user outage at equality bandwidth", c2_ssu_outage},
      {"c3", "at-site closed form vs exact-placement Monte Carlo", c3_msu_outage},
      {"c4", "macro-only outage at equality bandwidth", c4_mmu_outage},
      {"c5", "closed and end-to-end gain forms differ by the fallback unit",
       c5_gain_identity},
      {"c6", "regime shapes, concavity, and stationary points", c6_regimes},
      {"c7", "branch continuity and range endpoints", c7_continuity_endpoints},
      {"c8", "policy rollout reproduces the active-power form", c8_rollout},
      {"c9", "gain vs arrival rate dips once, never with free handovers",
       c9_arrival_sweep_shape},
      {"c10", "daily profile: ties, dominance, greedy losses", c10_day_profile},
  };

  int failures = 0;
  bool ran_any = false;
  for (const auto& entry : entries) {
    if (argc > 1 && std::strcmp(argv[1], entry.name) != 0) continue;
    ran_any = true;
    const Criterion result = entry.run();
    std::printf("[%s] %s: %s%s%s\n", result.ok ? "PASS" : "FAIL", entry.name,
                entry.summary, result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
    std::fflush(stdout);
    failures += result.ok ? 0 : 1;
  }
  if (!ran_any) {
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 64;
  }
  return failures;
}
