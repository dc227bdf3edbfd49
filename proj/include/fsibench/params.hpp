#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fsibench {

/// Physical parameters of the 2D channel benchmark (cgs units).
/// The fluid box is L x R; the membrane lies on the y = R edge.
struct PhysicalParams {
    double rho_f = 1.0;    // fluid density [g/cm^3]
    double rho_s = 1.1;    // structure density [g/cm^3]
    double h_s = 0.1;      // membrane thickness [cm]
    double beta = 5.7e6;   // circumferential stiffness [dyne/cm^4]
    double L = 6.0;        // channel length [cm]
    double R = 0.5;        // channel height [cm]

    /// Surface mass of the membrane, rho_s * h_s [g/cm^2].
    double membrane_mass() const { return rho_s * h_s; }

    void validate() const {
        if (!(rho_f > 0.0)) throw std::domain_error("rho_f must be > 0");
        if (!(rho_s > 0.0)) throw std::domain_error("rho_s must be > 0");
        if (!(h_s > 0.0)) throw std::domain_error("h_s must be > 0");
        if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
        if (!(L > 0.0)) throw std::domain_error("L must be > 0");
        if (!(R > 0.0)) throw std::domain_error("R must be > 0");
    }
};

/// Uniform time mesh t^n = n*dt on [0, t_final].
struct TimeParams {
    double dt = 1e-3;       // time step [s]
    double t_final = 0.1;   // final time [s]

    int n_steps() const { return static_cast<int>(std::lround(t_final / dt)); }

    void validate() const {
        if (!(dt > 0.0)) throw std::domain_error("dt must be > 0");
        if (!(t_final > 0.0)) throw std::domain_error("t_final must be > 0");
    }
};

enum class Scheme { Monolithic, ScDnAlpha, LcDnAlpha };

/// How the acceleration parameter is chosen each iteration.
struct AlphaStrategy {
    enum class Kind { Fixed, MinimumResidual };
    Kind kind = Kind::Fixed;
    double value = 1.0;  // used when kind == Fixed

    static AlphaStrategy fixed(double alpha) { return {Kind::Fixed, alpha}; }
    static AlphaStrategy minimum_residual() { return {Kind::MinimumResidual, 0.0}; }
};

/// Sub-iteration control for the strongly coupled scheme.
struct CouplingConfig {
    AlphaStrategy alpha = AlphaStrategy::fixed(1.0);
    double tol = 1e-4;   // relative increment tolerance
    int max_iter = 500;

    void validate() const {
        if (alpha.kind == AlphaStrategy::Kind::Fixed &&
            !(alpha.value > 0.0 && alpha.value < 2.0))
            throw std::domain_error("fixed alpha must lie in (0, 2)");
        if (!(tol > 0.0)) throw std::domain_error("tol must be > 0");
        if (max_iter < 1) throw std::domain_error("max_iter must be >= 1");
    }
};

}  // namespace fsibench
