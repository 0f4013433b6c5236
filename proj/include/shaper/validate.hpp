#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shaper/scenario.hpp"
#include "shaper/sim.hpp"

namespace shaper {

/// One analytic-vs-simulated comparison with its pinned tolerance.
struct CheckRow {
  std::string name;
  double analytic = 0.0;
  double empirical = 0.0;
  double tolerance = 0.0;  // absolute unless relative is set
  bool relative = false;
  bool pass = false;
  bool informational = false;  // reported but not gating
};

/// Buffer analytics vs the event simulation at utilizations .3/.5/.7/.9.
/// Tolerances: +-0.01 absolute on the empty and single-unit probabilities,
/// +-5% relative on the shutdown rate.
std::vector<CheckRow> validate_queue(long n_arrivals, std::uint64_t seed);

/// Rate-outage constraints vs Monte Carlo at constraint-equality bandwidth
/// (SSU at offload 0.25/0.5/1.0 and MMU, +-0.02 absolute around the target)
/// and the at-site MSU closed form vs exact-placement Monte Carlo at 1 MHz
/// for site distances 400/600/800 m (+-0.02 absolute). At-site placement rows
/// are reported alongside as informational context.
std::vector<CheckRow> validate_outage(const Scenario& scenario, long n_samples,
                                      std::uint64_t seed);

/// Mean on-grid power of a policy rollout vs the closed form, +-2% relative,
/// on a stable instance of the shipped configuration.
std::vector<CheckRow> validate_rollout(const Scenario& scenario, long n_expected_arrivals,
                                       std::uint64_t seed);

std::string render_check_table(const std::vector<CheckRow>& rows);
bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace shaper
