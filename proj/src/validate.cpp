#include "shaper/validate.hpp"

#include <cmath>
#include <sstream>

namespace shaper {

namespace {

CheckRow make_row(std::string name, double analytic, double empirical, double tol,
                  bool relative, bool informational = false) {
  CheckRow r;
  r.name = std::move(name);
  r.analytic = analytic;
  r.empirical = empirical;
  r.tolerance = tol;
  r.relative = relative;
  r.informational = informational;
  const double err = std::abs(empirical - analytic);
  r.pass = relative ? err <= tol * std::abs(analytic) : err <= tol;
  return r;
}

}  // namespace

std::vector<CheckRow> validate_queue(long n_arrivals, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const double mu = 1.0;
  int i = 0;
  for (double rho : {0.3, 0.5, 0.7, 0.9}) {
    EnergyConfig energy;
    energy.arrival_rate_per_s = rho * mu;
    energy.unit_joules = 1.0;
    energy.handover_cost_j = 1.0;
    const QueueAnalytics q = analyze_queue(energy, mu);
    const QueueTrace t = simulate_energy_queue(rho * mu, mu, n_arrivals, seed + i++);
    const std::string tag = "queue rho=" + format_double(rho);
    rows.push_back(make_row(tag + " p_off", q.off_probability, t.empirical_p_off, 0.01, false));
    rows.push_back(make_row(tag + " p_one", q.p_one, t.empirical_p_one, 0.01, false));
    rows.push_back(make_row(tag + " shutdown_rate", q.shutdown_rate_per_s,
                            t.empirical_shutdown_rate, 0.05, true));
  }
  return rows;
}

std::vector<CheckRow> validate_outage(const Scenario& scenario, long n_samples,
                                      std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const NetworkConfig& net = scenario.net;
  const QosSpec& qos = scenario.qos;
  const DerivedConstants consts = derive_constants(net, qos);
  TrafficSnapshot traffic = scenario.traffic;

  // Offloaded users at constraint-equality SC bandwidth.
  for (double phi : {0.25, 0.5, 1.0}) {
    const double w = required_bandwidth(
        UserClass::Ssu, expected_user_count(UserClass::Ssu, traffic, net, phi), qos, consts);
    const OutageEstimate est =
        estimate_outage(UserClass::Ssu, net, qos, traffic, phi, w, n_samples, seed);
    rows.push_back(make_row("ssu outage phi=" + format_double(phi), qos.outage_target,
                            est.probability, 0.02, false));
  }

  // Macro-only users at constraint-equality macro bandwidth.
  {
    const double w = required_bandwidth(
        UserClass::Mmu, expected_user_count(UserClass::Mmu, traffic, net, 0.0), qos, consts);
    const OutageEstimate est =
        estimate_outage(UserClass::Mmu, net, qos, traffic, 0.0, w, n_samples, seed + 101);
    rows.push_back(make_row("mmu outage", qos.outage_target, est.probability, 0.02, false));
  }

  // At-site closed form vs Monte Carlo for macro-served SC users on 1 MHz.
  {
    NetworkConfig n2 = net;
    int i = 0;
    for (double dms : {400.0, 600.0, 800.0}) {
      n2.sc.macro_sc_distance_m = dms;
      const double w = 1e6;
      const double closed = msu_outage_closed_form(n2, qos, traffic, 0.0, w);
      const OutageEstimate exact =
          estimate_outage(UserClass::Msu, n2, qos, traffic, 0.0, w, n_samples, seed + 201 + i,
                          MsuPlacement::ExactDisc);
      const OutageEstimate at_site =
          estimate_outage(UserClass::Msu, n2, qos, traffic, 0.0, w, n_samples, seed + 201 + i,
                          MsuPlacement::AtScSite);
      const std::string tag = "msu d_ms=" + format_double(dms);
      rows.push_back(
          make_row(tag + " closed vs exact placement", closed, exact.probability, 0.02, false));
      rows.push_back(make_row(tag + " closed vs at-site placement", closed,
                              at_site.probability, 0.02, false, true));
      ++i;
    }
  }
  return rows;
}

std::vector<CheckRow> validate_rollout(const Scenario& scenario, long n_expected_arrivals,
                                       std::uint64_t seed) {
  std::vector<CheckRow> rows;
  // A stable instance of the shipped radio parameters: harvested units arrive
  // slower than the chosen drain rate, and the macro band can host all users.
  Scenario s = scenario;
  s.traffic.macro_density_per_m2 = 5e-6;
  s.traffic.sc_density_per_m2 = 60e-6;
  s.energy.arrival_rate_per_s = 40.0;
  s.energy.handover_cost_j = 0.5;

  const EotsDecision d = eots_decision(s.traffic, s.energy, s.net, s.qos);
  const double horizon = static_cast<double>(n_expected_arrivals) / s.energy.arrival_rate_per_s;
  const PolicyLedger ledger =
      simulate_policy(s.traffic, s.energy, s.net, s.qos, d, horizon, seed);
  const double analytic = ongrid_power_active(d.operating, s.net, s.energy);
  const double mean_power = ledger.ongrid_energy_j / ledger.horizon_s;
  rows.push_back(make_row("rollout mean on-grid power", analytic, mean_power, 0.02, true));

  const double p_off =
      d.operating.queue.stable ? d.operating.queue.off_probability : 0.0;
  rows.push_back(
      make_row("rollout sleep fraction", p_off, 1.0 - ledger.sc_uptime_fraction, 0.01, false));
  return rows;
}

std::string render_check_table(const std::vector<CheckRow>& rows) {
  std::ostringstream out;
  out << "check                                          analytic      empirical     tol        status\n";
  for (const auto& r : rows) {
    std::string name = r.name;
    if (name.size() < 45) name.resize(45, ' ');
    std::string tol = format_double(r.tolerance) + (r.relative ? " rel" : " abs");
    std::string a = format_double(r.analytic);
    std::string e = format_double(r.empirical);
    if (a.size() < 13) a.resize(13, ' ');
    if (e.size() < 13) e.resize(13, ' ');
    if (tol.size() < 10) tol.resize(10, ' ');
    out << name << ' ' << a << ' ' << e << ' ' << tol << ' '
        << (r.pass ? "pass" : "FAIL") << (r.informational ? " (info)" : "") << '\n';
  }
  return out.str();
}

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (!r.informational && !r.pass) return false;
  return true;
}

}  // namespace shaper
