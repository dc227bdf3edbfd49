#pragma once

#include <string>
#include <vector>

#include "fsibench/discretization.hpp"
#include "fsibench/modal.hpp"
#include "fsibench/params.hpp"

namespace fsibench::field {

using fsibench::modal::WUpdate;

/// Discrete fields of one time level (cgs units). Velocities are edge-normal
/// values; u_prev holds u^{n-1} for the loosely coupled corrections.
struct GridState {
    Eigen::VectorXd p;        // free pressure nodes
    Eigen::VectorXd u;        // edge velocities u^n
    Eigen::VectorXd u_prev;   // u^{n-1}
    Eigen::VectorXd eta;      // interface displacement eta^n
    Eigen::VectorXd eta_m1;
    Eigen::VectorXd eta_m2;
    Eigen::VectorXd w;        // membrane velocity w^n
    Eigen::VectorXd u_sigma;  // interface fluid normal velocity u^n . n
    double p_in = 0.0;        // inlet pressure at t^n
    double time = 0.0;
    int step = 0;
};

/// Rest start: membrane displaced by amp * sin(mode pi x / L), everything
/// else zero, histories filled as if at rest.
GridState initial_state(const Discretization& disc, double amp = 0.0, int mode = 1);

struct ScStepResult {
    int iterations = 0;
    bool converged = false;
    double final_increment = 0.0;
};

/// A full sub-iteration snapshot, used by the algebraic equivalence check.
struct ScIterate {
    Eigen::VectorXd u, p, u_sigma, eta, w;
};

/// Time steppers for the benchmark. All three share one discretization and
/// advance a GridState in place; inlet forcing is the pressure value at the
/// new time level.
class BenchmarkSolver {
  public:
    BenchmarkSolver(const Discretization& disc, const PhysicalParams& p,
                    const TimeParams& t);

    const Discretization& disc() const { return disc_; }
    const PhysicalParams& params() const { return phys_; }
    const TimeParams& time_params() const { return time_; }

    /// Coupled solve of one step through the interface-Robin pressure system;
    /// the reference for both partitioned drivers.
    void monolithic_step(GridState& s, double p_in_next = 0.0) const;

    /// SC-DN-alpha sub-iterations until the relative increment of the
    /// interface tuple (u-trace, p-trace, eta, w) drops below cfg.tol.
    ScStepResult sc_step(GridState& s, double alpha, const CouplingConfig& cfg,
                         double p_in_next = 0.0, WUpdate wupd = WUpdate::Standard) const;

    /// Runs exactly k_max SC sub-iterations from the standard initialization
    /// and records every iterate (no convergence test). Used to certify the
    /// preconditioned-Richardson equivalence.
    std::vector<ScIterate> sc_iterates(const GridState& s, double alpha, int k_max,
                                       double p_in_next = 0.0,
                                       WUpdate wupd = WUpdate::Richardson) const;

    /// One explicit LC-DN-alpha step: single fluid solve, single structure
    /// solve, plain velocity update.
    void lc_step(GridState& s, double alpha, double p_in_next = 0.0) const;

    /// Largest magnitude among the (1 - alpha)-weighted right-hand-side
    /// correction terms of the SC scheme evaluated on the given state
    /// (momentum, divergence, interface, structure). Identically zero at
    /// alpha = 1.
    double sc_correction_max(const GridState& s, double alpha) const;

    /// Same for the LC scheme's lagged-residual corrections.
    double lc_correction_max(const GridState& s, double alpha) const;

  private:
    const Discretization& disc_;
    PhysicalParams phys_;
    TimeParams time_;
    double ms_;  // rho_s h_s / dt^2 + beta
    Eigen::SimplicialLDLT<SpMat> robin_;  // monolithic pressure system

    Eigen::VectorXd fluid_poisson_rhs(const Eigen::VectorXd& u_n, double alpha,
                                      const Eigen::VectorXd& w_k, double p_in_inc) const;
};

/// Plain-text matrix snapshot: header "# nx ny hx hy t", then one row per
/// grid line (y = 0 first), nx+1 space-separated values per row.
void write_field_snapshot(const std::string& path, const Discretization& disc,
                          const Eigen::VectorXd& node_values, double t);

/// Pressure padded to the full node grid (Dirichlet strips as zero).
Eigen::VectorXd pressure_node_field(const Discretization& disc, const Eigen::VectorXd& p);

}  // namespace fsibench::field
