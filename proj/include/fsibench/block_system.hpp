#pragma once

#include <array>
#include <string>
#include <vector>

#include "fsibench/drivers.hpp"

namespace fsibench::block {

using field::Discretization;
using field::GridState;
using field::SpMat;

/// Per-time-step monolithic system in the six-block ordering
/// [interior fluid velocity, pressure, interface fluid velocity,
///  interface displacement, interior displacement, interface structure
///  velocity]. The interior-displacement block is empty for the membrane;
/// the layout is kept so the block correspondence stays auditable.
/// Block (3,6) holds -M_sigma, the coupling the preconditioner drops.
struct BlockSystem {
    int n_u = 0, n_p = 0, n_s = 0;
    int off_u = 0, off_p = 0, off_us = 0, off_ds = 0, off_ws = 0;
    int total = 0;

    SpMat A;
    Eigen::VectorXd b;

    const Discretization* disc = nullptr;
    PhysicalParams phys;
    TimeParams time;
    double ms = 0.0;  // rho_s h_s / dt^2 + beta

    Eigen::VectorXd pack(const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                         const Eigen::VectorXd& u_sigma, const Eigen::VectorXd& eta,
                         const Eigen::VectorXd& w) const;
};

BlockSystem assemble_block_system(const Discretization& disc, const GridState& s,
                                  const PhysicalParams& p, const TimeParams& t,
                                  double p_in_next = 0.0);

/// Refreshes only b for new histories (the matrix depends on dt and the
/// physics alone), so one assembly serves a whole time march.
void update_rhs(BlockSystem& sys, const GridState& s, double p_in_next = 0.0);

/// Writes a solution vector back into the grid state and shifts histories,
/// as one time step of the monolithic march.
void apply_solution(const BlockSystem& sys, const Eigen::VectorXd& x, GridState& s,
                    double p_in_next = 0.0);

/// Direct sparse solve of the assembled system.
Eigen::VectorXd direct_solve(const BlockSystem& sys);

enum class PrecondKind {
    BlockGaussSeidel,  // A with the (3,6) block zeroed; one solve == one DN cycle
    FullSystem         // P = A; negative control
};

/// Exact application of P^{-1} by block forward substitution (or a full
/// sparse LU for the negative control).
class BlockPreconditioner {
  public:
    BlockPreconditioner(const BlockSystem& sys, PrecondKind kind = PrecondKind::BlockGaussSeidel);

    Eigen::VectorXd solve(const Eigen::VectorXd& r) const;
    PrecondKind kind() const { return kind_; }

    /// P assembled explicitly (for residual checks in tests).
    SpMat matrix() const;

  private:
    const BlockSystem& sys_;
    PrecondKind kind_;
    Eigen::SparseLU<SpMat> full_lu_;  // FullSystem only
};

struct RichardsonResult {
    enum class Status { Converged, MaxIter, Stagnated };
    Status status = Status::MaxIter;
    int iterations = 0;
    std::vector<double> residual_history;   // relative |b - A x| per iterate
    std::vector<double> increment_history;  // relative |x_k - x_{k-1}|
    std::vector<double> alphas;             // alpha used per iteration
    bool mr_fallback = false;               // MR stagnated, continued with fixed alpha
    Eigen::VectorXd x;
};

/// Preconditioned Richardson iteration
///   P x^{(k)} = P x^{(k-1)} + alpha (b - A x^{(k-1)}),
/// with fixed alpha or the Minimum-Residual step
///   alpha_k = <A z_k, r_k> / <A z_k, A z_k>,  z_k = P^{-1} r_k.
/// Stops at relative residual < cfg.tol; stagnation (20 consecutive
/// iterations with residual ratio > 1 - 1e-12) is reported separately, and
/// under MR triggers a fallback to the last alpha that reduced the residual.
RichardsonResult richardson_iterate(const BlockSystem& sys, const BlockPreconditioner& P,
                                    const Eigen::VectorXd& x0, const AlphaStrategy& strategy,
                                    const CouplingConfig& cfg);

struct CertifyReport {
    double max_rel_deviation = 0.0;
    std::array<std::pair<std::string, double>, 5> block_deviation{};
    std::string first_offending;  // first block above threshold, empty if none
    bool pass = false;
};

/// Runs k_max preconditioned Richardson iterations and the DN sub-step cycle
/// side by side from the identical initialization (eta_(0) = eta^n,
/// w_(0) = w^n) and reports the largest relative deviation over all iterates
/// and blocks. The negative control replaces the preconditioner with A.
CertifyReport certify_equivalence(const field::BenchmarkSolver& solver, const GridState& s,
                                  double alpha, int k_max, double threshold = 1e-9,
                                  PrecondKind kind = PrecondKind::BlockGaussSeidel);

}  // namespace fsibench::block
