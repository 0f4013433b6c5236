// Python bindings for the shaping library: configuration types, the
// closed-form pipeline, the activation optimizer, and the simulation oracles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shaper/scenario.hpp"
#include "shaper/sim.hpp"
#include "shaper/validate.hpp"

namespace py = pybind11;
using namespace shaper;

PYBIND11_MODULE(_shaper, m) {
  m.doc() = "Energy-aware traffic shaping for a two-tier cellular network";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  py::enum_<Tier>(m, "Tier")
      .value("SMALL_CELL", Tier::SmallCell)
      .value("MACRO_EDGE", Tier::MacroEdge);
  py::enum_<UserClass>(m, "UserClass")
      .value("SSU", UserClass::Ssu)
      .value("MSU", UserClass::Msu)
      .value("MMU", UserClass::Mmu);
  py::enum_<BsMode>(m, "BsMode").value("ACTIVE", BsMode::Active).value("SLEEP", BsMode::Sleep);
  py::enum_<GainForm>(m, "GainForm")
      .value("CLOSED", GainForm::Closed)
      .value("PIPELINE", GainForm::Pipeline);
  py::enum_<RegimeTag>(m, "RegimeTag")
      .value("ENERGY_SUFFICIENT_LINEAR", RegimeTag::EnergySufficientLinear)
      .value("MONOTONE_INCREASING", RegimeTag::MonotoneIncreasing)
      .value("MONOTONE_DECREASING", RegimeTag::MonotoneDecreasing)
      .value("INTERIOR_CONCAVE", RegimeTag::InteriorConcave);
  py::enum_<MsuPlacement>(m, "MsuPlacement")
      .value("AT_SC_SITE", MsuPlacement::AtScSite)
      .value("EXACT_DISC", MsuPlacement::ExactDisc);
  py::enum_<Policy>(m, "Policy")
      .value("EOTS", Policy::Eots)
      .value("GREEDY", Policy::Greedy)
      .value("BOTH", Policy::Both);

  py::class_<MacroConfig>(m, "MacroConfig")
      .def(py::init<>())
      .def_readwrite("coverage_radius_m", &MacroConfig::coverage_radius_m)
      .def_readwrite("static_power_w", &MacroConfig::static_power_w)
      .def_readwrite("tx_power_w", &MacroConfig::tx_power_w)
      .def_readwrite("amp_inefficiency", &MacroConfig::amp_inefficiency)
      .def_readwrite("pathloss_exp", &MacroConfig::pathloss_exp)
      .def_readwrite("bandwidth_hz", &MacroConfig::bandwidth_hz)
      .def_readwrite("interference_factor", &MacroConfig::interference_factor);

  py::class_<SmallCellConfig>(m, "SmallCellConfig")
      .def(py::init<>())
      .def_readwrite("coverage_radius_m", &SmallCellConfig::coverage_radius_m)
      .def_readwrite("static_power_w", &SmallCellConfig::static_power_w)
      .def_readwrite("tx_power_w", &SmallCellConfig::tx_power_w)
      .def_readwrite("amp_inefficiency", &SmallCellConfig::amp_inefficiency)
      .def_readwrite("pathloss_exp", &SmallCellConfig::pathloss_exp)
      .def_readwrite("bandwidth_hz", &SmallCellConfig::bandwidth_hz)
      .def_readwrite("interference_factor", &SmallCellConfig::interference_factor)
      .def_readwrite("macro_sc_distance_m", &SmallCellConfig::macro_sc_distance_m);

  py::class_<QosSpec>(m, "QosSpec")
      .def(py::init<>())
      .def_readwrite("rate_threshold_bps", &QosSpec::rate_threshold_bps)
      .def_readwrite("outage_target", &QosSpec::outage_target)
      .def_readwrite("noise_density_w_per_hz", &QosSpec::noise_density_w_per_hz);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("macro", &NetworkConfig::macro)
      .def_readwrite("sc", &NetworkConfig::sc);

  py::class_<TrafficSnapshot>(m, "TrafficSnapshot")
      .def(py::init<>())
      .def(py::init([](double rho_m, double rho_s) {
             return TrafficSnapshot{rho_m, rho_s};
           }),
           py::arg("macro_density_per_m2"), py::arg("sc_density_per_m2"))
      .def_readwrite("macro_density_per_m2", &TrafficSnapshot::macro_density_per_m2)
      .def_readwrite("sc_density_per_m2", &TrafficSnapshot::sc_density_per_m2);

  py::class_<EnergyConfig>(m, "EnergyConfig")
      .def(py::init<>())
      .def(py::init([](double lambda_e, double unit_j, double c_ho) {
             return EnergyConfig{lambda_e, unit_j, c_ho};
           }),
           py::arg("arrival_rate_per_s"), py::arg("unit_joules") = 1.0,
           py::arg("handover_cost_j") = 0.0)
      .def_readwrite("arrival_rate_per_s", &EnergyConfig::arrival_rate_per_s)
      .def_readwrite("unit_joules", &EnergyConfig::unit_joules)
      .def_readwrite("handover_cost_j", &EnergyConfig::handover_cost_j);

  py::class_<DerivedConstants>(m, "DerivedConstants")
      .def_readonly("tau_ssu", &DerivedConstants::tau_ssu)
      .def_readonly("tau_msu", &DerivedConstants::tau_msu)
      .def_readonly("tau_mmu", &DerivedConstants::tau_mmu)
      .def_readonly("zeta_ee", &DerivedConstants::zeta_ee)
      .def_readonly("kappa_w", &DerivedConstants::kappa_w);

  py::class_<QueueAnalytics>(m, "QueueAnalytics")
      .def_readonly("utilization", &QueueAnalytics::utilization)
      .def_readonly("off_probability", &QueueAnalytics::off_probability)
      .def_readonly("p_one", &QueueAnalytics::p_one)
      .def_readonly("shutdown_rate_per_s", &QueueAnalytics::shutdown_rate_per_s)
      .def_readonly("handover_power_w", &QueueAnalytics::handover_power_w)
      .def_readonly("stable", &QueueAnalytics::stable);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def_readonly("sc_active", &OperatingPoint::sc_active)
      .def_readonly("mu_e_per_s", &OperatingPoint::mu_e_per_s)
      .def_readonly("w_ss_hz", &OperatingPoint::w_ss_hz)
      .def_readonly("offload_fraction", &OperatingPoint::offload_fraction)
      .def_readonly("w_mm_hz", &OperatingPoint::w_mm_hz)
      .def_readonly("w_msa_hz", &OperatingPoint::w_msa_hz)
      .def_readonly("w_mso_hz", &OperatingPoint::w_mso_hz)
      .def_readonly("queue", &OperatingPoint::queue);

  py::class_<GainReport>(m, "GainReport")
      .def_readonly("rf_gain_w", &GainReport::rf_gain_w)
      .def_readonly("total_gain_w", &GainReport::total_gain_w)
      .def_readonly("p_active_w", &GainReport::p_active_w)
      .def_readonly("p_off_w", &GainReport::p_off_w)
      .def_readonly("form", &GainReport::form);

  py::class_<Regime>(m, "Regime")
      .def_readonly("tag", &Regime::tag)
      .def_readonly("kappa_w", &Regime::kappa_w)
      .def_readonly("upper_threshold_w", &Regime::upper_threshold_w)
      .def_readonly("lower_threshold_w", &Regime::lower_threshold_w);

  py::class_<MuRange>(m, "MuRange")
      .def_readonly("lo", &MuRange::lo)
      .def_readonly("hi", &MuRange::hi);

  py::class_<EotsDecision>(m, "EotsDecision")
      .def_readonly("activate_sc", &EotsDecision::activate_sc)
      .def_readonly("mu_e_per_s", &EotsDecision::mu_e_per_s)
      .def_readonly("operating", &EotsDecision::operating)
      .def_readonly("predicted_gain_w", &EotsDecision::predicted_gain_w)
      .def_readonly("regime", &EotsDecision::regime)
      .def_readonly("gain", &EotsDecision::gain)
      .def("to_json", [](const EotsDecision& d) { return decision_json(d); });

  py::class_<OutageEstimate>(m, "OutageEstimate")
      .def_readonly("probability", &OutageEstimate::probability)
      .def_readonly("std_error", &OutageEstimate::std_error)
      .def_readonly("wilson_low", &OutageEstimate::wilson_low)
      .def_readonly("wilson_high", &OutageEstimate::wilson_high)
      .def_readonly("samples", &OutageEstimate::samples);

  py::class_<QueueTrace>(m, "QueueTrace")
      .def_readonly("empirical_p_off", &QueueTrace::empirical_p_off)
      .def_readonly("empirical_p_one", &QueueTrace::empirical_p_one)
      .def_readonly("empirical_shutdown_rate", &QueueTrace::empirical_shutdown_rate)
      .def_readonly("events", &QueueTrace::events)
      .def_readonly("seed", &QueueTrace::seed);

  py::class_<PolicyLedger>(m, "PolicyLedger")
      .def_readonly("ongrid_energy_j", &PolicyLedger::ongrid_energy_j)
      .def_readonly("handover_count", &PolicyLedger::handover_count)
      .def_readonly("sc_uptime_fraction", &PolicyLedger::sc_uptime_fraction)
      .def_readonly("horizon_s", &PolicyLedger::horizon_s);

  py::class_<UserSample>(m, "UserSample")
      .def_readonly("user_class", &UserSample::user_class)
      .def_readonly("distance_m", &UserSample::distance_m)
      .def_readonly("fading", &UserSample::fading)
      .def_readonly("peers", &UserSample::peers);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("net", &Scenario::net)
      .def_readwrite("qos", &Scenario::qos)
      .def_readwrite("energy", &Scenario::energy)
      .def_readwrite("traffic", &Scenario::traffic);

  py::class_<ProfilePeriod>(m, "ProfilePeriod")
      .def_readonly("start_s", &ProfilePeriod::start_s)
      .def_readonly("duration_s", &ProfilePeriod::duration_s)
      .def_readonly("rho_m_per_km2", &ProfilePeriod::rho_m_per_km2)
      .def_readonly("rho_s_per_km2", &ProfilePeriod::rho_s_per_km2)
      .def_readonly("lambda_e_per_s", &ProfilePeriod::lambda_e_per_s);

  py::class_<DailyProfiles>(m, "DailyProfiles")
      .def_readonly("periods", &DailyProfiles::periods)
      .def_readonly("label", &DailyProfiles::label);

  py::class_<PeriodRecord>(m, "PeriodRecord")
      .def_readonly("c_ho_j", &PeriodRecord::c_ho_j)
      .def_readonly("period", &PeriodRecord::period)
      .def_readonly("policy", &PeriodRecord::policy)
      .def_readonly("feasible", &PeriodRecord::feasible)
      .def_readonly("activate_sc", &PeriodRecord::activate_sc)
      .def_readonly("mu_e_per_s", &PeriodRecord::mu_e_per_s)
      .def_readonly("phi", &PeriodRecord::phi)
      .def_readonly("p_off", &PeriodRecord::p_off)
      .def_readonly("delta_p_w", &PeriodRecord::delta_p_w);

  py::class_<DayAggregate>(m, "DayAggregate")
      .def_readonly("c_ho_j", &DayAggregate::c_ho_j)
      .def_readonly("infeasible_periods", &DayAggregate::infeasible_periods)
      .def_property_readonly("avg_gain_eots_w",
                             [](const DayAggregate& a) -> py::object {
                               if (!a.avg_gain_eots_w) return py::none();
                               return py::float_(*a.avg_gain_eots_w);
                             })
      .def_property_readonly("avg_gain_greedy_w",
                             [](const DayAggregate& a) -> py::object {
                               if (!a.avg_gain_greedy_w) return py::none();
                               return py::float_(*a.avg_gain_greedy_w);
                             });

  py::class_<DayReport>(m, "DayReport")
      .def_readonly("records", &DayReport::records)
      .def_readonly("aggregates", &DayReport::aggregates)
      .def_readonly("periods", &DayReport::periods)
      .def_readonly("infeasible_periods", &DayReport::infeasible_periods)
      .def("to_csv", &day_report_csv)
      .def("to_json", &day_report_json);

  py::class_<ActiveOptimum>(m, "ActiveOptimum")
      .def_readonly("mu_e_per_s", &ActiveOptimum::mu_e_per_s)
      .def_readonly("gain", &ActiveOptimum::gain)
      .def_readonly("gain_closed", &ActiveOptimum::gain_closed);

  // Model pipeline.
  m.def("edge_spectral_efficiency", &edge_spectral_efficiency, py::arg("tier"),
        py::arg("net"), py::arg("qos"));
  m.def("msu_spectral_efficiency", &msu_spectral_efficiency, py::arg("net"),
        py::arg("qos"));
  m.def("derive_constants", &derive_constants, py::arg("net"), py::arg("qos"));
  m.def("effective_mmu_density", &effective_mmu_density, py::arg("traffic"),
        py::arg("net"));
  m.def("expected_user_count", &expected_user_count, py::arg("cls"), py::arg("traffic"),
        py::arg("net"), py::arg("offload_fraction"));
  m.def("required_bandwidth", &required_bandwidth, py::arg("cls"),
        py::arg("expected_user_count"), py::arg("qos"), py::arg("consts"));
  m.def("msu_outage_closed_form", &msu_outage_closed_form, py::arg("net"), py::arg("qos"),
        py::arg("traffic"), py::arg("offload_fraction"), py::arg("allocated_bw_hz"));
  m.def("noise_dbm_per_mhz_to_w_per_hz", &noise_dbm_per_mhz_to_w_per_hz,
        py::arg("dbm_per_mhz"));

  // Buffer and power accounting.
  m.def("analyze_queue", &analyze_queue, py::arg("energy"), py::arg("service_rate_per_s"));
  m.def("bs_power", &bs_power, py::arg("static_w"), py::arg("amp_inefficiency"),
        py::arg("tx_power_w"), py::arg("utilized_bw_hz"), py::arg("total_bw_hz"),
        py::arg("mode"));
  m.def("sc_bandwidth_from_rate", &sc_bandwidth_from_rate, py::arg("mu_e_per_s"),
        py::arg("energy"), py::arg("sc"));
  m.def(
      "offload_fraction",
      [](double w_ss, const TrafficSnapshot& traffic, const QosSpec& qos,
         const DerivedConstants& consts, const NetworkConfig& net) {
        const OffloadFraction f = offload_fraction(w_ss, traffic, qos, consts, net);
        return py::make_tuple(f.raw, f.value);
      },
      py::arg("w_ss_hz"), py::arg("traffic"), py::arg("qos"), py::arg("consts"),
      py::arg("net"), "Returns (raw, clamped)");
  m.def(
      "macro_bandwidths",
      [](double phi, const TrafficSnapshot& traffic, const QosSpec& qos,
         const DerivedConstants& consts, const NetworkConfig& net, bool enforce) {
        const MacroBandwidths b = macro_bandwidths(phi, traffic, qos, consts, net, enforce);
        return py::make_tuple(b.w_mm_hz, b.w_msa_hz, b.w_mso_hz);
      },
      py::arg("phi"), py::arg("traffic"), py::arg("qos"), py::arg("consts"),
      py::arg("net"), py::arg("enforce_feasible") = true);
  m.def("make_operating_point", &make_operating_point, py::arg("mu_e_per_s"),
        py::arg("traffic"), py::arg("energy"), py::arg("net"), py::arg("qos"),
        py::arg("consts"), py::arg("enforce_macro_feasible") = true);
  m.def("ongrid_power_active", &ongrid_power_active, py::arg("op"), py::arg("net"),
        py::arg("energy"));
  m.def("ongrid_power_sc_off", &ongrid_power_sc_off, py::arg("traffic"), py::arg("net"),
        py::arg("qos"), py::arg("consts"));
  m.def("rf_gain_closed_form", &rf_gain_closed_form, py::arg("mu_e_per_s"),
        py::arg("energy"), py::arg("consts"));
  m.def("total_gain", &total_gain, py::arg("mu_e_per_s"), py::arg("energy"),
        py::arg("consts"), py::arg("traffic"), py::arg("net"), py::arg("qos"),
        py::arg("form"));

  // Activation optimizer.
  m.def("feasible_mu_range", &feasible_mu_range, py::arg("energy"), py::arg("net"),
        py::arg("qos"), py::arg("consts"), py::arg("traffic"));
  m.def("classify_regime", &classify_regime, py::arg("kappa_w"), py::arg("lambda_e"),
        py::arg("c_ho"));
  m.def("solve_optimal_rho", &solve_optimal_rho, py::arg("kappa_w"), py::arg("lambda_e"),
        py::arg("c_ho"), py::arg("tol") = 1e-10);
  m.def("best_active_gain", &best_active_gain, py::arg("traffic"), py::arg("energy"),
        py::arg("net"), py::arg("qos"));
  m.def("eots_decision", &eots_decision, py::arg("traffic"), py::arg("energy"),
        py::arg("net"), py::arg("qos"));
  m.def("greedy_decision", &greedy_decision, py::arg("traffic"), py::arg("energy"),
        py::arg("net"), py::arg("qos"));

  // Simulation oracles.
  m.def("estimate_outage", &estimate_outage, py::arg("cls"), py::arg("net"),
        py::arg("qos"), py::arg("traffic"), py::arg("phi"), py::arg("allocated_bw_hz"),
        py::arg("n_samples"), py::arg("seed"),
        py::arg("placement") = MsuPlacement::ExactDisc,
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_outage_field", &estimate_outage_field, py::arg("cls"), py::arg("net"),
        py::arg("qos"), py::arg("traffic"), py::arg("phi"), py::arg("allocated_bw_hz"),
        py::arg("n_fields"), py::arg("seed"),
        py::arg("placement") = MsuPlacement::ExactDisc,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "simulate_energy_queue",
      [](double lambda_e, double mu_e, long n_arrivals, std::uint64_t seed,
         bool want_trace) -> py::tuple {
        if (!want_trace) {
          QueueTrace t;
          {
            py::gil_scoped_release release;
            t = simulate_energy_queue(lambda_e, mu_e, n_arrivals, seed);
          }
          return py::make_tuple(t, py::none());
        }
        std::ostringstream trace;
        QueueTrace t;
        {
          py::gil_scoped_release release;
          t = simulate_energy_queue(lambda_e, mu_e, n_arrivals, seed, &trace);
        }
        return py::make_tuple(t, py::str(trace.str()));
      },
      py::arg("lambda_e"), py::arg("mu_e"), py::arg("n_arrivals"), py::arg("seed"),
      py::arg("want_trace") = false,
      "Returns (QueueTrace, csv_text_or_None)");
  m.def("simulate_policy", &simulate_policy, py::arg("traffic"), py::arg("energy"),
        py::arg("net"), py::arg("qos"), py::arg("decision"), py::arg("horizon_s"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("sample_user_field", &sample_user_field, py::arg("traffic"), py::arg("net"),
        py::arg("phi"), py::arg("seed"));

  // Scenario front end.
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"), py::arg("origin") = "<string>");
  m.def("load_profiles", &load_profiles, py::arg("path"));
  m.def("parse_profiles", &parse_profiles, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("run_day", &run_day, py::arg("profiles"), py::arg("scenario"), py::arg("policy"),
        py::arg("c_ho_list"), py::call_guard<py::gil_scoped_release>());
  m.def("sweep_gain_csv", &sweep_gain_csv, py::arg("scenario"), py::arg("lambda_grid"),
        py::arg("c_ho_list"), py::call_guard<py::gil_scoped_release>());
  m.def("gain_curve_csv", &gain_curve_csv, py::arg("scenario"), py::arg("lambda_e"),
        py::arg("c_ho"), py::arg("grid_points"));
  m.def("derived_constants_json", &derived_constants_json, py::arg("consts"));
}
