#include "shaper/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "shaper/parallel.hpp"
#include "shaper/rng.hpp"

namespace shaper {

namespace {

constexpr double kWilsonZ = 1.96;

OutageEstimate finish_estimate(long outages, long samples) {
  OutageEstimate e;
  e.samples = samples;
  if (samples <= 0) return e;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(outages) / n;
  e.probability = p;
  e.std_error = std::sqrt(p * (1.0 - p) / n);
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  e.wilson_low = std::max(0.0, center - half);
  e.wilson_high = std::min(1.0, center + half);
  return e;
}

struct RadioParams {
  double tx_power_w;
  double total_bw_hz;
  double interference_factor;
  double pathloss_exp;
};

RadioParams radio_for(UserClass cls, const NetworkConfig& net) {
  if (cls == UserClass::Ssu)
    return {net.sc.tx_power_w, net.sc.bandwidth_hz, net.sc.interference_factor,
            net.sc.pathloss_exp};
  return {net.macro.tx_power_w, net.macro.bandwidth_hz, net.macro.interference_factor,
          net.macro.pathloss_exp};
}

double peer_mean(UserClass cls, const TrafficSnapshot& traffic, const NetworkConfig& net,
                 double phi) {
  return expected_user_count(cls, traffic, net, phi);
}

double draw_distance(UserClass cls, const NetworkConfig& net, MsuPlacement placement,
                     Philox4x32& gen) {
  switch (cls) {
    case UserClass::Ssu:
      return net.sc.coverage_radius_m * std::sqrt(gen.uniform01());
    case UserClass::Mmu:
      return net.macro.coverage_radius_m * std::sqrt(gen.uniform01());
    case UserClass::Msu: {
      if (placement == MsuPlacement::AtScSite) return net.sc.macro_sc_distance_m;
      const double r = net.sc.coverage_radius_m * std::sqrt(gen.uniform01());
      const double psi = 2.0 * std::numbers::pi * gen.uniform01();
      const double d = net.sc.macro_sc_distance_m;
      return std::sqrt(d * d + r * r + 2.0 * d * r * std::cos(psi));
    }
  }
  return 0.0;
}

}  // namespace

double user_sinr(double tx_power_w, double total_bw_hz, double interference_factor,
                 double pathloss_exp, double noise_w_per_hz, double distance_m,
                 double fading, double per_user_bw_hz) {
  // Signal P_T*w_u/W and noise-plus-interference (theta+1)*sigma^2*w_u share
  // the per-user bandwidth factor; it cancels and never enters the result.
  (void)per_user_bw_hz;
  return tx_power_w * std::pow(distance_m, -pathloss_exp) * fading /
         ((interference_factor + 1.0) * noise_w_per_hz * total_bw_hz);
}

OutageEstimate estimate_outage(UserClass cls, const NetworkConfig& net, const QosSpec& qos,
                               const TrafficSnapshot& traffic, double phi,
                               double allocated_bw_hz, long n_samples, std::uint64_t seed,
                               MsuPlacement placement) {
  if (n_samples < 1) throw DomainError("estimate_outage: need at least one sample");
  if (allocated_bw_hz <= 0.0)
    throw DomainError("estimate_outage: allocated bandwidth must be > 0");
  const RadioParams radio = radio_for(cls, net);
  const double mean = peer_mean(cls, traffic, net, phi);

  constexpr long kChunk = 1 << 14;
  const long n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<long> outage_per_chunk(n_chunks, 0);
  parallel_for_indexed(n_chunks, [&](long chunk) {
    const long lo = chunk * kChunk;
    const long hi = std::min(n_samples, lo + kChunk);
    Philox4x32 gen(seed, static_cast<std::uint64_t>(chunk));
    long outages = 0;
    for (long i = lo; i < hi; ++i) {
      const long peers = gen.poisson(mean);
      const double d = draw_distance(cls, net, placement, gen);
      const double h = gen.exponential();
      const double sinr =
          user_sinr(radio.tx_power_w, radio.total_bw_hz, radio.interference_factor,
                    radio.pathloss_exp, qos.noise_density_w_per_hz, d, h);
      const double rate =
          allocated_bw_hz / static_cast<double>(peers + 1) * std::log2(1.0 + sinr);
      if (rate < qos.rate_threshold_bps) ++outages;
    }
    outage_per_chunk[chunk] = outages;
  });

  long outages = 0;
  for (long c : outage_per_chunk) outages += c;
  return finish_estimate(outages, n_samples);
}

namespace {

struct FieldCounts {
  long users = 0;
  long outages = 0;
};

std::vector<UserSample> sample_field_impl(const TrafficSnapshot& traffic,
                                          const NetworkConfig& net, double phi,
                                          Philox4x32& gen) {
  std::vector<UserSample> field;
  const double ds = net.sc.coverage_radius_m;
  const double dm = net.macro.coverage_radius_m;
  const double dms = net.sc.macro_sc_distance_m;

  const double mmu_mean =
      traffic.macro_density_per_m2 * std::numbers::pi * (dm * dm - ds * ds);
  const long n_mmu = gen.poisson(mmu_mean);
  for (long i = 0; i < n_mmu; ++i) {
    // Uniform in the macro disc, rejecting the small-cell disc around its site.
    double x, y;
    do {
      x = dm * (2.0 * gen.uniform01() - 1.0);
      y = dm * (2.0 * gen.uniform01() - 1.0);
    } while (x * x + y * y > dm * dm ||
             (x - dms) * (x - dms) + y * y <= ds * ds);
    field.push_back({UserClass::Mmu, std::sqrt(x * x + y * y), gen.exponential(), 0});
  }

  const long n_sc = gen.poisson(traffic.sc_density_per_m2 * std::numbers::pi * ds * ds);
  long n_ssu = 0;
  for (long i = 0; i < n_sc; ++i) {
    const bool offloaded = gen.uniform01() < phi;
    const double r = ds * std::sqrt(gen.uniform01());
    const double psi = 2.0 * std::numbers::pi * gen.uniform01();
    const double fading = gen.exponential();
    if (offloaded) {
      field.push_back({UserClass::Ssu, r, fading, 0});
      ++n_ssu;
    } else {
      const double d = std::sqrt(dms * dms + r * r + 2.0 * dms * r * std::cos(psi));
      field.push_back({UserClass::Msu, d, fading, 0});
    }
  }

  const long n_msu = n_sc - n_ssu;
  for (auto& u : field) {
    const long count = u.user_class == UserClass::Mmu   ? n_mmu
                       : u.user_class == UserClass::Ssu ? n_ssu
                                                        : n_msu;
    u.peers = std::max<long>(0, count - 1);
  }
  return field;
}

}  // namespace

std::vector<UserSample> sample_user_field(const TrafficSnapshot& traffic,
                                          const NetworkConfig& net, double phi,
                                          std::uint64_t seed) {
  Philox4x32 gen(seed, 0);
  return sample_field_impl(traffic, net, phi, gen);
}

OutageEstimate estimate_outage_field(UserClass cls, const NetworkConfig& net,
                                     const QosSpec& qos, const TrafficSnapshot& traffic,
                                     double phi, double allocated_bw_hz, long n_fields,
                                     std::uint64_t seed, MsuPlacement placement) {
  if (n_fields < 1) throw DomainError("estimate_outage_field: need at least one field");
  const RadioParams radio = radio_for(cls, net);

  constexpr long kChunk = 256;
  const long n_chunks = (n_fields + kChunk - 1) / kChunk;
  std::vector<FieldCounts> counts(n_chunks);
  parallel_for_indexed(n_chunks, [&](long chunk) {
    const long lo = chunk * kChunk;
    const long hi = std::min(n_fields, lo + kChunk);
    FieldCounts c;
    for (long f = lo; f < hi; ++f) {
      Philox4x32 gen(seed, static_cast<std::uint64_t>(f) + 1);
      const auto field = sample_field_impl(traffic, net, phi, gen);
      for (const auto& u : field) {
        if (u.user_class != cls) continue;
        double d = u.distance_m;
        if (cls == UserClass::Msu && placement == MsuPlacement::AtScSite)
          d = net.sc.macro_sc_distance_m;
        const double sinr =
            user_sinr(radio.tx_power_w, radio.total_bw_hz, radio.interference_factor,
                      radio.pathloss_exp, qos.noise_density_w_per_hz, d, u.fading);
        const double rate =
            allocated_bw_hz / static_cast<double>(u.peers + 1) * std::log2(1.0 + sinr);
        ++c.users;
        if (rate < qos.rate_threshold_bps) ++c.outages;
      }
    }
    counts[chunk] = c;
  });

  long users = 0, outages = 0;
  for (const auto& c : counts) {
    users += c.users;
    outages += c.outages;
  }
  return finish_estimate(outages, users);
}

QueueTrace simulate_energy_queue(double lambda_e, double mu_e, long n_arrivals,
                                 std::uint64_t seed, std::ostream* trace_csv) {
  if (!(lambda_e > 0.0) || !(mu_e > 0.0))
    throw DomainError("simulate_energy_queue: rates must be > 0");
  if (n_arrivals < 1000)
    throw DomainError("simulate_energy_queue: need at least 1e3 arrivals");

  const double per_slot_mean = lambda_e / mu_e;
  const double slot_dt = 1.0 / mu_e;
  Philox4x32 gen(seed, 0);
  Philox4x32 trace_gen(seed, 1);  // side stream: tracing never shifts results

  if (trace_csv) *trace_csv << "time_s,queue_len,sc_state,event_type\n";

  long arrivals = 0;
  long slots = 0, off_slots = 0, one_slots = 0, shutdowns = 0;
  std::uint64_t buffered = 0;
  bool prev_on = false;
  while (arrivals < n_arrivals) {
    const bool on = buffered > 0;
    off_slots += !on;
    one_slots += buffered == 1;
    const long a = gen.poisson(per_slot_mean);
    const bool shutdown = buffered == 1 && a == 0;
    shutdowns += shutdown;

    if (trace_csv) {
      const double t0 = static_cast<double>(slots) * slot_dt;
      const char* state = on ? "on" : "off";
      if (on && !prev_on)
        *trace_csv << t0 << ',' << buffered << ",on,reactivate\n";
      std::uint64_t level = buffered;
      for (long k = 0; k < a; ++k) {
        ++level;
        *trace_csv << t0 + trace_gen.uniform01() * slot_dt << ',' << level << ','
                   << state << ",arrival\n";
      }
      if (on) {
        --level;
        *trace_csv << t0 + slot_dt << ',' << level << ",on,consume\n";
        if (shutdown) *trace_csv << t0 + slot_dt << ',' << level << ",off,shutdown\n";
      }
    }

    if (buffered > 0) --buffered;
    buffered += static_cast<std::uint64_t>(a);
    arrivals += a;
    ++slots;
    prev_on = on;
  }

  QueueTrace t;
  t.events = arrivals;
  t.seed = seed;
  t.empirical_p_off = static_cast<double>(off_slots) / static_cast<double>(slots);
  t.empirical_p_one = static_cast<double>(one_slots) / static_cast<double>(slots);
  t.empirical_shutdown_rate =
      static_cast<double>(shutdowns) / (static_cast<double>(slots) * slot_dt);
  return t;
}

PolicyLedger simulate_policy(const TrafficSnapshot& traffic, const EnergyConfig& energy,
                             const NetworkConfig& net, const QosSpec& qos,
                             const EotsDecision& decision, double horizon_s,
                             std::uint64_t seed) {
  if (!(horizon_s > 0.0)) throw DomainError("simulate_policy: horizon must be > 0");
  PolicyLedger ledger;
  const DerivedConstants consts = derive_constants(net, qos);

  if (!decision.activate_sc) {
    ledger.horizon_s = horizon_s;
    ledger.ongrid_energy_j = ongrid_power_sc_off(traffic, net, qos, consts) * horizon_s;
    return ledger;
  }

  const OperatingPoint& op = decision.operating;
  const double mu = op.mu_e_per_s;
  const double slot_dt = 1.0 / mu;
  const long n_slots = std::max<long>(1, static_cast<long>(std::llround(horizon_s * mu)));
  const double macro_scale =
      net.macro.amp_inefficiency * net.macro.tx_power_w / net.macro.bandwidth_hz;
  const double p_on_w = net.macro.static_power_w + macro_scale * (op.w_mm_hz + op.w_msa_hz);
  const double p_extra_off_w = macro_scale * op.w_mso_hz;
  const double per_slot_mean = energy.arrival_rate_per_s / mu;

  Philox4x32 gen(seed, 0);
  std::uint64_t buffered = 0;
  bool prev_on = false;
  long on_slots = 0;
  double energy_j = 0.0;
  for (long s = 0; s < n_slots; ++s) {
    const bool on = buffered > 0;
    if (on != prev_on) {
      ++ledger.handover_count;
      energy_j += energy.handover_cost_j;
      prev_on = on;
    }
    energy_j += (p_on_w + (on ? 0.0 : p_extra_off_w)) * slot_dt;
    on_slots += on;
    if (buffered > 0) --buffered;
    buffered += static_cast<std::uint64_t>(gen.poisson(per_slot_mean));
  }

  ledger.horizon_s = static_cast<double>(n_slots) * slot_dt;
  ledger.ongrid_energy_j = energy_j;
  ledger.sc_uptime_fraction = static_cast<double>(on_slots) / static_cast<double>(n_slots);
  return ledger;
}

}  // namespace shaper
