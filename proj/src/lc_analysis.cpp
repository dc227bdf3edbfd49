#include "fsibench/lc_analysis.hpp"

#include <stdexcept>

#include "fsibench/spectrum.hpp"

namespace fsibench {

Cubic lc_char_poly(double alpha, double mu, const PhysicalParams& p, const TimeParams& t) {
    p.validate();
    t.validate();
    const double ms = p.membrane_mass();
    const double b = p.beta * t.dt * t.dt / ms;
    const double am = alpha * p.rho_f * mu / ms;
    Cubic c;
    c.a3 = 1.0 + b;
    c.a2 = -3.0 + alpha - (1.0 - alpha) * b + am;
    c.a1 = 3.0 - 2.0 * alpha - 2.0 * am;
    c.a0 = am - 1.0 + alpha;
    return c;
}

double lc_instability_threshold(double alpha, const PhysicalParams& p, const TimeParams& t) {
    if (!(alpha > 0.0)) throw std::domain_error("alpha must be > 0");
    return p.beta * (2.0 - alpha) * t.dt * t.dt / (4.0 * alpha) +
           (2.0 * (1.0 - alpha) / alpha + 1.0) * p.membrane_mass();
}

bool lc_unstable_predicate(double alpha, double mu, const PhysicalParams& p,
                           const TimeParams& t) {
    return p.rho_f * mu > lc_instability_threshold(alpha, p, t);
}

LcStabilityBounds lc_alpha_bar(const PhysicalParams& p, const TimeParams& t, int n_modes) {
    if (n_modes < 1) throw std::domain_error("n_modes must be >= 1");
    p.validate();
    t.validate();
    LcStabilityBounds out;
    for (int i = 1; i <= n_modes; ++i) {
        const double mu = added_mass_eigenvalue(i, p.L, p.R);
        const double r = p.membrane_mass() / (p.rho_f * mu);
        if (r >= 1.0) {
            out.excluded_modes.push_back(i);
            continue;
        }
        const double bar = 2.0 * r / (r + 1.0);
        if (!out.alpha_bar || bar < *out.alpha_bar) out.alpha_bar = bar;
    }
    return out;
}

ModeAnalysis analyze_mode(int i, double alpha, const PhysicalParams& p, const TimeParams& t) {
    ModeAnalysis a;
    a.index = i;
    a.mu = added_mass_eigenvalue(i, p.L, p.R);
    a.sc_amplification = sc_amplification(alpha, a.mu, p, t);
    a.sc_alpha_bound = sc_alpha_bound_mode(a.mu, p, t);
    a.lc_coeffs = lc_char_poly(alpha, a.mu, p, t);
    a.jury = jury_test(a.lc_coeffs);
    a.root_magnitudes = cubic_root_magnitudes(a.lc_coeffs);
    a.lc_unstable_predicate = lc_unstable_predicate(alpha, a.mu, p, t);
    return a;
}

std::vector<ModeAnalysis> analyze_modes(int n_modes, double alpha, const PhysicalParams& p,
                                        const TimeParams& t) {
    std::vector<ModeAnalysis> out;
    out.reserve(static_cast<size_t>(n_modes));
    for (int i = 1; i <= n_modes; ++i) out.push_back(analyze_mode(i, alpha, p, t));
    return out;
}

}  // namespace fsibench
