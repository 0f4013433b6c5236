#include <doctest.h>

#include <cmath>

#include "shaper/eots.hpp"
#include "shaper/rng.hpp"
#include "table1.hpp"

using namespace shaper;

namespace {

// Handover-cost share of a sleep cycle per arrival: h(rho) = (1-rho)(1-e^-rho)/rho.
double sleep_cost_share(double rho) {
  return (1.0 - rho) * (-std::expm1(-rho)) / rho;
}

// Gain versus utilization with the handover term weighted as requested; the
// constant part is irrelevant for locating the argmax.
double gain_vs_rho(double rho, double kappa, double lambda, double c_ho, double weight) {
  return -kappa * rho - weight * lambda * c_ho * sleep_cost_share(rho);
}

double grid_argmax(double kappa, double lambda, double c_ho, double weight, int n) {
  double best_rho = 0.0, best = -1e300;
  for (int i = 1; i < n; ++i) {
    const double rho = static_cast<double>(i) / n;
    const double v = gain_vs_rho(rho, kappa, lambda, c_ho, weight);
    if (v > best) {
      best = v;
      best_rho = rho;
    }
  }
  return best_rho;
}

}  // namespace

TEST_CASE("feasible drain-rate range") {
  const Scenario s = table1();
  const DerivedConstants c = derive_constants(s.net, s.qos);
  const MuRange r = feasible_mu_range(s.energy, s.net, s.qos, c, s.traffic);
  CHECK(r.lo == 56.0);
  CHECK(r.hi == doctest::Approx(68.05368029548453).epsilon(1e-12));

  // Empty cell: only the single typical user bounds the band.
  TrafficSnapshot none{20e-6, 0.0};
  const MuRange r0 = feasible_mu_range(s.energy, s.net, s.qos, c, none);
  const double expected =
      56.0 + s.qos.rate_threshold_bps / (c.tau_ssu * s.net.sc.bandwidth_hz) * 2.6 * 6.3;
  CHECK(r0.hi == doctest::Approx(expected).epsilon(1e-12));

  // Dense cell: the full band binds and the top rate is the full-load drain.
  TrafficSnapshot dense{20e-6, 1000e-6};
  const MuRange r1 = feasible_mu_range(s.energy, s.net, s.qos, c, dense);
  CHECK(r1.hi == doctest::Approx(56.0 + 2.6 * 6.3).epsilon(1e-12));

  // Doubling the unit halves both endpoints.
  EnergyConfig big = s.energy;
  big.unit_joules = 2.0;
  const MuRange rh = feasible_mu_range(big, s.net, s.qos, c, s.traffic);
  CHECK(rh.lo == r.lo / 2.0);
  CHECK(rh.hi == r.hi / 2.0);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(117.5, 40.0, 0.0).tag == RegimeTag::MonotoneIncreasing);
  CHECK(classify_regime(117.5, 0.0, 2.0).tag == RegimeTag::MonotoneIncreasing);

  const double lambda = 10.0, c_ho = 2.0;  // lambda*C = 20
  CHECK(classify_regime(40.0, lambda, c_ho).tag == RegimeTag::InteriorConcave);
  CHECK(classify_regime(10.0, lambda, c_ho).tag == RegimeTag::MonotoneDecreasing);
  CHECK(classify_regime(61.0, lambda, c_ho).tag == RegimeTag::MonotoneIncreasing);

  const Regime r = classify_regime(40.0, lambda, c_ho);
  CHECK(r.upper_threshold_w == doctest::Approx(60.0));
  CHECK(r.lower_threshold_w == doctest::Approx(20.0 * (1.0 - 1.0 / std::numbers::e)));
  CHECK_THROWS_AS(classify_regime(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("slope factor range and monotonicity") {
  CHECK(gain_slope_factor(1e-9) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(gain_slope_factor(1.0) ==
        doctest::Approx(1.0 - 1.0 / std::numbers::e).epsilon(1e-12));
  double prev = gain_slope_factor(0.001);
  for (int i = 1; i <= 100; ++i) {
    const double cur = gain_slope_factor(0.001 + 0.998 * i / 100.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("stationary utilization") {
  // kappa equal to the arrival-weighted handover cost.
  const double rho = solve_optimal_rho(20.0, 10.0, 2.0);
  CHECK(rho == doctest::Approx(0.46166397364156375).epsilon(1e-6));
  CHECK(std::abs(10.0 * 2.0 * gain_slope_factor(rho) - 20.0) <= 1e-9 * 20.0);

  // Shared positive scaling of (kappa, lambda*C) leaves the root unchanged.
  CHECK(solve_optimal_rho(20.0 * 7.5, 10.0, 2.0 * 7.5) == rho);

  // Ratio at the edges of the band clamps to the matching endpoint.
  CHECK(solve_optimal_rho(59.999, 10.0, 2.0) < 1e-6);
  const double lo_ratio = (1.0 - 1.0 / std::numbers::e) + 1e-7;
  CHECK(solve_optimal_rho(20.0 * lo_ratio, 10.0, 2.0) > 0.999);

  CHECK_THROWS_AS(solve_optimal_rho(80.0, 10.0, 2.0), DomainError);
}

TEST_CASE("bisection matches a grid argmax of the matching objective") {
  Philox4x32 gen(31, 0);
  const int n = 10000;
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = 0.5 + 49.5 * gen.uniform01();
    const double c_ho = 0.1 + 4.9 * gen.uniform01();

    // Single-weight stationarity against its own objective.
    double ratio = (1.0 - 1.0 / std::numbers::e) + (1.5 - (1.0 - 1.0 / std::numbers::e)) *
                                                       gen.uniform01();
    double kappa = lambda * c_ho * ratio;
    double root = solve_optimal_rho(kappa, lambda, c_ho);
    CHECK(std::abs(root - grid_argmax(kappa, lambda, c_ho, 1.0, n)) <= 1.5 / n);

    // Double-weight stationarity against the reported-gain objective.
    ratio = 2.0 * (1.0 - 1.0 / std::numbers::e) + 0.3 + (3.0 - 2.0 * (1.0 - 1.0 / std::numbers::e) - 0.35) * gen.uniform01();
    kappa = lambda * c_ho * ratio;
    root = solve_optimal_rho(kappa, lambda, 2.0 * c_ho);
    CHECK(std::abs(root - grid_argmax(kappa, lambda, c_ho, 2.0, n)) <= 1.5 / n);
  }
}

TEST_CASE("decision with no harvest keeps the cell off") {
  const Scenario s = table1_feasible();
  const EotsDecision d = eots_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK_FALSE(d.activate_sc);
  CHECK(d.predicted_gain_w == 0.0);
  CHECK(d.operating.offload_fraction == 0.0);
  CHECK(d.operating.w_ss_hz == 0.0);
  CHECK_FALSE(d.operating.sc_active);
}

TEST_CASE("free handovers run flat out and match greedy") {
  Scenario s = table1_feasible();
  s.energy.arrival_rate_per_s = 80.0;
  s.energy.handover_cost_j = 0.0;
  const DerivedConstants c = derive_constants(s.net, s.qos);
  const MuRange r = feasible_mu_range(s.energy, s.net, s.qos, c, s.traffic);

  const EotsDecision d = eots_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK(d.activate_sc);
  CHECK(d.mu_e_per_s == r.hi);
  CHECK(d.regime.tag == RegimeTag::EnergySufficientLinear);

  const EotsDecision g = greedy_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK(g.activate_sc);
  CHECK(g.predicted_gain_w == d.predicted_gain_w);
}

TEST_CASE("interior instances match the grid argmax of the reported gain") {
  // Handover costs spanning the concave band, including one with an interior
  // stationary point inside the feasible range (lambda=30, C~1.96).
  for (double c_ho : {1.5, 1.955, 2.0, 2.5}) {
    Scenario s = table1_feasible();
    s.energy.arrival_rate_per_s = 30.0;
    s.energy.handover_cost_j = c_ho;
    const DerivedConstants c = derive_constants(s.net, s.qos);
    CHECK(classify_regime(c.kappa_w, 30.0, c_ho).tag == RegimeTag::InteriorConcave);

    const MuRange r = feasible_mu_range(s.energy, s.net, s.qos, c, s.traffic);
    const int n = 10000;
    double best_mu = r.lo, best = -1e300;
    for (int i = 0; i <= n; ++i) {
      const double mu = r.lo + (r.hi - r.lo) * i / n;
      const double v =
          total_gain(mu, s.energy, c, s.traffic, s.net, s.qos, GainForm::Pipeline)
              .total_gain_w;
      if (v > best) {
        best = v;
        best_mu = mu;
      }
    }
    // The active optimum lands on the grid argmax whether or not the decision
    // then turns the cell on.
    const ActiveOptimum opt = best_active_gain(s.traffic, s.energy, s.net, s.qos);
    CHECK(std::abs(opt.mu_e_per_s - best_mu) <= (r.hi - r.lo) / n + 1e-9);
    CHECK(opt.gain.total_gain_w >= best - 1e-9);

    const EotsDecision d = eots_decision(s.traffic, s.energy, s.net, s.qos);
    if (d.activate_sc) {
      CHECK(d.mu_e_per_s == opt.mu_e_per_s);
      CHECK(d.predicted_gain_w == opt.gain.total_gain_w);
    } else {
      CHECK(best <= 1e-9);
    }
  }
}

TEST_CASE("the decision never loses to greedy or to staying off") {
  Philox4x32 gen(77, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Scenario s = table1_feasible();
    s.traffic.sc_density_per_m2 = (5.0 + 95.0 * gen.uniform01()) * 1e-6;
    s.energy.arrival_rate_per_s = 80.0 * gen.uniform01();
    s.energy.handover_cost_j = 3.0 * gen.uniform01();
    const EotsDecision e = eots_decision(s.traffic, s.energy, s.net, s.qos);
    const EotsDecision g = greedy_decision(s.traffic, s.energy, s.net, s.qos);
    CHECK(e.predicted_gain_w >= g.predicted_gain_w - 1e-9);
    CHECK(e.predicted_gain_w >= 0.0);
    if (e.activate_sc) CHECK(e.predicted_gain_w > 0.0);
  }
}

TEST_CASE("greedy can lose power that the decision refuses to") {
  Scenario s = table1_feasible();
  s.energy.arrival_rate_per_s = 5.0;
  s.energy.handover_cost_j = 5.0;
  const EotsDecision g = greedy_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK(g.activate_sc);
  CHECK(g.predicted_gain_w < 0.0);
  const EotsDecision e = eots_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK(e.predicted_gain_w >= 0.0);

  // Sufficient harvest removes every sleep cycle and the two agree again.
  s.energy.arrival_rate_per_s = 200.0;
  const EotsDecision g2 = greedy_decision(s.traffic, s.energy, s.net, s.qos);
  const EotsDecision e2 = eots_decision(s.traffic, s.energy, s.net, s.qos);
  CHECK(g2.predicted_gain_w == doctest::Approx(e2.predicted_gain_w).epsilon(1e-12));
}

TEST_CASE("infeasible macro density propagates") {
  Scenario s = table1();  // 20 users/km2 cannot be hosted
  s.energy.arrival_rate_per_s = 40.0;
  CHECK_THROWS_AS(eots_decision(s.traffic, s.energy, s.net, s.qos), InfeasibleError);
  CHECK_THROWS_AS(greedy_decision(s.traffic, s.energy, s.net, s.qos), InfeasibleError);
}

TEST_CASE("per-regime gain shapes over the drain-rate grid") {
  const Scenario base = table1_feasible();
  const DerivedConstants c = derive_constants(base.net, base.qos);
  Philox4x32 gen(13, 0);
  const int n = 400;

  for (int trial = 0; trial < 25; ++trial) {
    Scenario s = base;
    s.energy.arrival_rate_per_s = 20.0 + 40.0 * gen.uniform01();
    const double lambda = s.energy.arrival_rate_per_s;
    const MuRange r = feasible_mu_range(s.energy, s.net, s.qos, c, s.traffic);

    // Closed-form gain: the object the shape statements describe.
    auto curve = [&](double c_ho) {
      s.energy.handover_cost_j = c_ho;
      std::vector<double> y;
      for (int i = 0; i <= n; ++i) {
        const double mu = r.lo + (r.hi - r.lo) * i / n;
        y.push_back(total_gain(mu, s.energy, c, s.traffic, s.net, s.qos,
                               GainForm::Closed)
                        .total_gain_w);
      }
      return y;
    };

    // kappa >= 3*lambda*C: nondecreasing everywhere.
    {
      const auto y = curve(c.kappa_w / (3.0 * lambda) * 0.9);
      for (size_t i = 1; i < y.size(); ++i) CHECK(y[i] >= y[i - 1] - 1e-9);
    }
    // kappa <= (1-1/e)*lambda*C: nonincreasing beyond the arrival rate.
    {
      const auto y = curve(c.kappa_w / ((1.0 - 1.0 / std::numbers::e) * lambda) * 1.1);
      for (size_t i = 1; i < y.size(); ++i) {
        const double mu_prev = r.lo + (r.hi - r.lo) * (i - 1) / n;
        if (mu_prev >= lambda) CHECK(y[i] <= y[i - 1] + 1e-9);
      }
    }
  }
}
