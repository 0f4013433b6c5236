#pragma once

#include "shaper/config.hpp"

namespace shaper {

enum class Tier { SmallCell, MacroEdge };

enum class UserClass { Ssu, Msu, Mmu };

/// Constants derived once per configuration and reused across the
/// bandwidth/power pipeline and the activation optimizer.
struct DerivedConstants {
  double tau_ssu = 0.0;  // cell-edge spectral efficiency at the small cell, bps/Hz
  double tau_msu = 0.0;  // spectral efficiency of macro-served users at the SC site
  double tau_mmu = 0.0;  // cell-edge spectral efficiency at the macro
  double zeta_ee = 0.0;  // conversion rate of harvested energy into on-grid power
  double kappa_w = 0.0;  // zeta_ee*P_0s + beta_m*P_Tm*R_th/(W_m*tau_msu)
};

/// Cell-edge spectral efficiency for the requested tier:
///   tau = log2(1 + eta*P_T*(alpha+2) / (2*(theta+1)*sigma^2*W*D^alpha)).
/// Throws DomainError if the result is non-finite or non-positive.
double edge_spectral_efficiency(Tier tier, const NetworkConfig& net, const QosSpec& qos);

/// Spectral efficiency of macro-served users inside the small cell,
/// treating them all as located at the SC site:
///   tau = log2(1 + eta*P_Tm / (sigma^2*W_m*(theta_m+1)*D_ms^alpha_m)).
double msu_spectral_efficiency(const NetworkConfig& net, const QosSpec& qos);

DerivedConstants derive_constants(const NetworkConfig& net, const QosSpec& qos);

/// Density of macro-only users spread over the whole macro disc:
/// rho' = rho_m*(D_m^2 - D_s^2)/D_m^2.
double effective_mmu_density(const TrafficSnapshot& traffic, const NetworkConfig& net);

/// Expected user count of a class: SSU phi*rho_s*pi*D_s^2, MSU (1-phi)*...,
/// MMU pi*D_m^2*rho'_m.
double expected_user_count(UserClass cls, const TrafficSnapshot& traffic,
                           const NetworkConfig& net, double offload_fraction);

/// Minimum bandwidth meeting the outage constraint of a class with equality:
/// w = (R_th/tau_class)*(1 + expected_user_count). May exceed the tier band;
/// feasibility is the caller's concern.
double required_bandwidth(UserClass cls, double expected_user_count, const QosSpec& qos,
                          const DerivedConstants& consts);

/// Closed-form outage probability of macro-served SC users on w_ms Hz,
/// with every such user placed at the SC site: a Poisson mixture over the
/// peer count of the exact Rayleigh survival at distance D_ms.
double msu_outage_closed_form(const NetworkConfig& net, const QosSpec& qos,
                              const TrafficSnapshot& traffic, double offload_fraction,
                              double allocated_bw_hz);

}  // namespace shaper
