#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "shaper/eots.hpp"
#include "shaper/model.hpp"

namespace shaper {

/// MSU position model: the closed forms put every macro-served SC user at the
/// SC site; the exact mode places them uniformly in the SC disc and computes
/// the macro distance from geometry.
enum class MsuPlacement { AtScSite, ExactDisc };

struct OutageEstimate {
  double probability = 0.0;
  double std_error = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  long samples = 0;
};

struct QueueTrace {
  double empirical_p_off = 0.0;
  double empirical_p_one = 0.0;
  double empirical_shutdown_rate = 0.0;
  long events = 0;  // arrivals seen
  std::uint64_t seed = 0;
};

struct PolicyLedger {
  double ongrid_energy_j = 0.0;
  long handover_count = 0;
  double sc_uptime_fraction = 0.0;
  double horizon_s = 0.0;
};

struct UserSample {
  UserClass user_class = UserClass::Mmu;
  double distance_m = 0.0;  // to the serving site (macro for MMU/MSU, SC for SSU)
  double fading = 0.0;      // unit-mean exponential
  long peers = 0;           // other users of the same class in the realization
};

/// Received SINR of one user. The per-user bandwidth enters the signal and
/// the noise terms identically and cancels; the parameter is kept so the
/// cancellation is part of the contract.
double user_sinr(double tx_power_w, double total_bw_hz, double interference_factor,
                 double pathloss_exp, double noise_w_per_hz, double distance_m,
                 double fading, double per_user_bw_hz = 1.0);

/// Typical-user Monte Carlo outage estimate for one class on the given
/// bandwidth: peer counts Poisson with the class mean, distances from the
/// class geometry, unit-mean Rayleigh power fading. Deterministic in
/// (seed, n_samples) and independent of worker count.
OutageEstimate estimate_outage(UserClass cls, const NetworkConfig& net, const QosSpec& qos,
                               const TrafficSnapshot& traffic, double phi,
                               double allocated_bw_hz, long n_samples, std::uint64_t seed,
                               MsuPlacement placement = MsuPlacement::ExactDisc);

/// Full-field variant: draws whole spatial realizations and measures outage
/// over every user of the class.
OutageEstimate estimate_outage_field(UserClass cls, const NetworkConfig& net,
                                     const QosSpec& qos, const TrafficSnapshot& traffic,
                                     double phi, double allocated_bw_hz, long n_fields,
                                     std::uint64_t seed,
                                     MsuPlacement placement = MsuPlacement::ExactDisc);

/// Event simulation of the energy buffer. Consumption is slotted: a rate-mu
/// clock ticks while the cell owns the spectrum; a tick with a buffered unit
/// burns it, a tick with an empty buffer sleeps the cell until the first
/// arrival, which resumes burning at the next tick. Shutdowns are ticks that
/// burn the last unit with no arrival before the tick completes. State
/// fractions are measured per slot at tick boundaries.
/// An optional sink receives a CSV event trace (time_s,queue_len,sc_state,
/// event_type); trace timestamps draw from a side stream so results are
/// identical with tracing on or off.
QueueTrace simulate_energy_queue(double lambda_e, double mu_e, long n_arrivals,
                                 std::uint64_t seed, std::ostream* trace_csv = nullptr);

/// Couples the buffer simulation to the macro bandwidth ledger of a decision:
/// sleeping slots add the fallback band, every off<->on flip costs one
/// handover. Returns time-integrated on-grid energy over the horizon.
PolicyLedger simulate_policy(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                             const NetworkConfig& net, const QosSpec& qos,
                             const EotsDecision& decision, double horizon_s,
                             std::uint64_t seed);

/// One spatial realization of all three user classes (counts Poisson from the
/// densities, positions uniform in their regions).
std::vector<UserSample> sample_user_field(const TrafficSnapshot& traffic,
                                          const NetworkConfig& net, double phi,
                                          std::uint64_t seed);

}  // namespace shaper
