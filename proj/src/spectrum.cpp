#include "fsibench/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsibench {

double added_mass_eigenvalue(int i, double L, double R) {
    if (i < 1) throw std::domain_error("mode index must be >= 1");
    if (!(L > 0.0) || !(R > 0.0)) throw std::domain_error("geometry must be positive");
    const double k = static_cast<double>(i) * std::numbers::pi;
    return L / (k * std::tanh(k * R / L));
}

std::vector<double> added_mass_spectrum(const PhysicalParams& p, int n_modes) {
    p.validate();
    std::vector<double> mu(static_cast<size_t>(n_modes));
    for (int i = 1; i <= n_modes; ++i)
        mu[static_cast<size_t>(i - 1)] = added_mass_eigenvalue(i, p.L, p.R);
    return mu;
}

double sc_amplification(double alpha, double mu, const PhysicalParams& p,
                        const TimeParams& t) {
    p.validate();
    t.validate();
    const double m = p.membrane_mass() + p.beta * t.dt * t.dt;
    return std::abs((1.0 - alpha) * m - alpha * p.rho_f * mu) / m;
}

double sc_alpha_bound_mode(double mu, const PhysicalParams& p, const TimeParams& t) {
    const double m = p.membrane_mass() + p.beta * t.dt * t.dt;
    return 2.0 * m / (m + p.rho_f * mu);
}

double sc_alpha_bound(const PhysicalParams& p, const TimeParams& t, int n_modes) {
    if (n_modes < 1) throw std::domain_error("n_modes must be >= 1");
    p.validate();
    t.validate();
    double bound = sc_alpha_bound_mode(added_mass_eigenvalue(1, p.L, p.R), p, t);
    for (int i = 2; i <= n_modes; ++i)
        bound = std::min(bound, sc_alpha_bound_mode(added_mass_eigenvalue(i, p.L, p.R), p, t));
    return bound;
}

double sc_alpha_opt(double mu, const PhysicalParams& p, const TimeParams& t) {
    return 0.5 * sc_alpha_bound_mode(mu, p, t);
}

}  // namespace fsibench
