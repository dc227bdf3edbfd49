#pragma once

#include <vector>

#include "fsibench/params.hpp"

namespace fsibench {

/// i-th eigenvalue of the added-mass operator for the L x R channel:
/// mu_i = L / (i*pi*tanh(i*pi*R/L)). Strictly decreasing in i.
double added_mass_eigenvalue(int i, double L, double R);

/// First n_modes eigenvalues, largest (i = 1) first.
std::vector<double> added_mass_spectrum(const PhysicalParams& p, int n_modes);

/// Modulus of the per-iteration error multiplier of the SC-DN-alpha
/// fixed point for a mode with added-mass eigenvalue mu:
///   |(1 - alpha)(rho_s h_s + beta dt^2) - alpha rho_f mu| / (rho_s h_s + beta dt^2).
/// The mode contracts iff the value is < 1.
double sc_amplification(double alpha, double mu, const PhysicalParams& p,
                        const TimeParams& t);

/// Convergence threshold for one mode:
///   alpha_max = 2 (rho_s h_s + dt^2 beta) / (rho_s h_s + dt^2 beta + rho_f mu).
double sc_alpha_bound_mode(double mu, const PhysicalParams& p, const TimeParams& t);

/// min over modes 1..n_modes of sc_alpha_bound_mode; the minimum is attained
/// at i = 1 since mu_i is decreasing.
double sc_alpha_bound(const PhysicalParams& p, const TimeParams& t, int n_modes);

/// alpha that zeroes the amplification for one mode (= bound / 2).
double sc_alpha_opt(double mu, const PhysicalParams& p, const TimeParams& t);

}  // namespace fsibench
