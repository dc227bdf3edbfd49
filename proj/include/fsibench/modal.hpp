#pragma once

#include <span>
#include <vector>

#include "fsibench/params.hpp"

namespace fsibench::modal {

/// One Fourier mode of the coupled benchmark. Histories are shifted on every
/// step; after a step w == (eta - eta_m1) / dt holds for the monolithic and
/// loosely coupled updates and for converged strongly coupled solves.
struct ModalState {
    double eta = 0.0;         // eta^n      [cm]
    double eta_m1 = 0.0;      // eta^{n-1}
    double eta_m2 = 0.0;      // eta^{n-2}
    double w = 0.0;           // membrane velocity w^n [cm/s]
    double u_sigma = 0.0;     // interface fluid normal velocity u^n.n [cm/s]
    double u_sigma_m1 = 0.0;  // u^{n-1}.n
    double p = 0.0;           // interface pressure trace p^n [dyne/cm^2]
};

/// Rest start: displaced membrane, zero velocity, zero pressure.
ModalState rest_state(double eta0);

/// Exact per-mode solution of the time-discrete coupled problem:
///   (rho_s h_s + beta dt^2 + rho_f mu) eta^{n+1}
///       = (rho_s h_s + rho_f mu)(2 eta^n - eta^{n-1}) + dt^2 f^{n+1}.
/// This is the limit of converged SC iterations.
ModalState monolithic_modal_step(const ModalState& s, double mu, const PhysicalParams& p,
                                 const TimeParams& t, double forcing = 0.0);

/// Which velocity update the SC sub-iteration uses. Standard is the plain
/// w_(k+1) = (eta_(k+1) - eta^n) / dt; Richardson reproduces the algebraic
/// Richardson iterate of the monolithic system bit for bit (the two coincide
/// at alpha = 1 and always converge to the same limit).
enum class WUpdate { Standard, Richardson };

struct ScSolveResult {
    ModalState state;                 // converged (or last) iterate, histories shifted
    int iterations = 0;
    bool converged = false;
    double final_increment = 0.0;     // last relative tuple increment
    double empirical_rate = 0.0;      // late-iteration ratio of eta increments
    std::vector<double> eta_iterates; // eta_(0), eta_(1), ...
};

/// Runs the SC-DN-alpha fixed point for one mode until the relative Euclidean
/// increment of the tuple (u_sigma, p, eta, w) drops below cfg.tol, or until
/// cfg.max_iter / iterate blow-up, which is reported as non-converged.
ScSolveResult sc_modal_solve(const ModalState& s, double mu, double alpha,
                             const CouplingConfig& cfg, const PhysicalParams& p,
                             const TimeParams& t, double forcing = 0.0,
                             WUpdate wupd = WUpdate::Standard);

/// One explicit loosely coupled step (single fluid + structure pass with the
/// (1 - alpha) consistency corrections); no inner iterations.
ModalState lc_modal_step(const ModalState& s, double mu, double alpha,
                         const PhysicalParams& p, const TimeParams& t,
                         double forcing = 0.0);

struct GrowthReport {
    bool unstable = false;
    double growth_factor = 1.0;
};

/// Least-squares fit of the tail slope of log|x_n|; unstable iff the fitted
/// per-step factor exceeds 1 + 1e-6. All-zero series are stable by
/// convention. Requires at least 50 samples.
GrowthReport detect_growth(std::span<const double> series);

/// Cosine impulse: amp * (1 - cos(2 pi t / duration)) for t in [0, duration],
/// zero afterwards (and identically zero when duration <= 0).
struct ImpulseForcing {
    double amp = 0.0;
    double duration = 0.0;
    double operator()(double time) const;
};

/// Per-run record emitted to the harness CSV schema.
struct RunReport {
    std::vector<double> eta_series;   // eta^n after each step
    std::vector<double> w_series;     // w^n after each step
    std::vector<double> p_series;     // interface pressure trace per step
    std::vector<double> u_series;     // interface fluid velocity per step
    std::vector<int> iterations;      // SC: inner iterations per step (else 1)
    std::vector<double> residuals;    // SC: terminal relative increment per step
    bool sc_diverged = false;         // an SC solve failed to converge
    bool unstable = false;
    double growth_factor = 1.0;
    double wall_seconds = 0.0;
};

/// Time-marches one mode with the chosen scheme. Growth is classified on the
/// displacement series, or on the velocity series when beta == 0 (the
/// membrane then carries a neutral translation mode and displacement drift is
/// not instability). Stops early if the state exceeds 1e100.
RunReport run_modal(Scheme scheme, double mu, double alpha, const CouplingConfig& cfg,
                    const PhysicalParams& p, const TimeParams& t, double eta0,
                    const ImpulseForcing& forcing = {});

}  // namespace fsibench::modal
