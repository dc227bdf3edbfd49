#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fsibench/cubic.hpp"
#include "fsibench/jury.hpp"
#include "fsibench/params.hpp"

namespace fsibench {

/// Normalized characteristic polynomial Q(y) = dt^2 / (rho_s h_s) * chi(y) of
/// the loosely coupled recurrence for a mode with added-mass eigenvalue mu:
///   a3 = 1 + beta dt^2 / (rho_s h_s)
///   a2 = -3 + alpha - (1 - alpha) beta dt^2 / (rho_s h_s) + alpha rho_f mu / (rho_s h_s)
///   a1 =  3 - 2 alpha - 2 alpha rho_f mu / (rho_s h_s)
///   a0 = alpha rho_f mu / (rho_s h_s) - 1 + alpha
/// Q(1) = alpha beta dt^2 / (rho_s h_s), so the Jury condition Q(1) > 0 holds
/// for every alpha > 0 when beta > 0.
Cubic lc_char_poly(double alpha, double mu, const PhysicalParams& p, const TimeParams& t);

/// Right-hand side of the instability threshold: the LC scheme is
/// unconditionally unstable for mode mu when rho_f mu exceeds
///   beta (2 - alpha) dt^2 / (4 alpha) + (2 (1 - alpha) / alpha + 1) rho_s h_s.
double lc_instability_threshold(double alpha, const PhysicalParams& p, const TimeParams& t);

/// True when the mode satisfies the instability condition above.
bool lc_unstable_predicate(double alpha, double mu, const PhysicalParams& p,
                           const TimeParams& t);

/// Stability bound over the first n_modes. Only modes with
/// rho_s h_s / (rho_f mu_i) < 1 qualify; the others are reported in
/// excluded_modes rather than silently folded into the minimum. When no mode
/// qualifies, alpha_bar is empty.
struct LcStabilityBounds {
    std::optional<double> alpha_bar;  // min over qualifying modes of 2 r_i / (r_i + 1)
    std::vector<int> excluded_modes;  // modes with r_i >= 1
};

LcStabilityBounds lc_alpha_bar(const PhysicalParams& p, const TimeParams& t, int n_modes);

/// Everything the analysis produces for one mode at a given alpha.
struct ModeAnalysis {
    int index = 0;
    double mu = 0.0;
    double sc_amplification = 0.0;
    double sc_alpha_bound = 0.0;
    Cubic lc_coeffs{};
    JuryVerdict jury{};
    std::array<double, 3> root_magnitudes{};
    bool lc_unstable_predicate = false;
};

ModeAnalysis analyze_mode(int i, double alpha, const PhysicalParams& p, const TimeParams& t);
std::vector<ModeAnalysis> analyze_modes(int n_modes, double alpha, const PhysicalParams& p,
                                        const TimeParams& t);

}  // namespace fsibench
