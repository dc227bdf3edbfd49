#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "fsibench/params.hpp"

namespace fsibench::field {

/// Structured grid on the L x R channel. Pressure lives at nodes; the
/// columns x = 0 and x = L carry homogeneous Dirichlet pressure (inlet data
/// enters through a boundary lift), y = 0 is a symmetry line, and the full
/// y = R edge is the coupling interface.
struct Grid {
    int nx = 120;
    int ny = 20;
    double L = 6.0;
    double R = 0.5;

    double hx() const { return L / nx; }
    double hy() const { return R / ny; }

    void validate() const {
        if (nx < 4 || ny < 4) throw std::domain_error("grid needs nx, ny >= 4");
        if (!(L > 0.0) || !(R > 0.0)) throw std::domain_error("geometry must be positive");
    }
};

using SpMat = Eigen::SparseMatrix<double>;

/// Finite-volume operators of the benchmark on the node/edge graph:
///   B      integrated divergence, outflux form (pressure nodes x edges)
///   Bsigma interface flux block (+hx per interface node)
///   L      = B diag(1/V) B^T, the SPD pressure Laplacian with the stated BCs
/// The integrated pressure gradient along an edge is -(B^T p); x = 0 inlet
/// data enters through lift(): per-edge momentum contribution for a unit
/// inlet pressure.
enum class PoissonBackend {
    Direct,             // sparse LDLT factorization (default; problems are small)
    ConjugateGradient,  // CG at 1e-12 relative tolerance
};

class Discretization {
  public:
    explicit Discretization(const Grid& g, PoissonBackend backend = PoissonBackend::Direct);

    const Grid& grid() const { return grid_; }
    int np() const { return np_; }
    int ne() const { return ne_; }
    int ns() const { return ns_; }

    // index maps
    int pidx(int j, int m) const { return m * (grid_.nx - 1) + (j - 1); }
    int xedge(int j, int m) const { return m * grid_.nx + j; }
    int yedge(int j, int m) const { return nxe_ + m * (grid_.nx - 1) + (j - 1); }
    int sidx(int j) const { return j - 1; }

    const SpMat& B() const { return B_; }
    const SpMat& Bsigma() const { return Bsig_; }
    const SpMat& laplacian() const { return L_; }
    const Eigen::VectorXd& edge_volume() const { return vol_; }
    const Eigen::VectorXd& dual_area() const { return area_; }  // per pressure node
    const Eigen::VectorXd& lift() const { return lift_; }

    /// Solves L x = rhs with the cached factorization.
    Eigen::VectorXd solve_poisson(const Eigen::VectorXd& rhs) const;

    /// Pressure values on the interface row, ordered by j = 1..nx-1.
    Eigen::VectorXd sigma_trace(const Eigen::VectorXd& p) const;

    /// Discrete divergence residual B u + Bsigma u_sigma (integrated form).
    Eigen::VectorXd divergence(const Eigen::VectorXd& u,
                               const Eigen::VectorXd& u_sigma) const;

    /// Coefficient of sin(i pi x / L) in an interface vector (discrete sine
    /// transform; the basis is exactly orthogonal on the uniform grid).
    double mode_coefficient(const Eigen::VectorXd& sigma_vec, int i) const;

    /// Samples of sin(i pi x / L) at the interface nodes.
    Eigen::VectorXd mode_shape(int i) const;

  private:
    Grid grid_;
    PoissonBackend backend_;
    int np_, ne_, ns_, nxe_;
    SpMat B_, Bsig_, L_;
    Eigen::VectorXd vol_, area_, lift_;
    Eigen::SimplicialLDLT<SpMat> solver_;
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg_;
};

/// Discrete added-mass operator: maps interface Neumann data to the interface
/// pressure trace through a Laplace solve. Dense, symmetric, positive
/// definite; eigenvalues approximate L/(i pi tanh(i pi R / L)).
struct AddedMassMatrix {
    Eigen::MatrixXd M;
    Eigen::VectorXd eigenvalues;   // descending
    Eigen::MatrixXd eigenvectors;  // columns match eigenvalues

    double mu(int i) const { return eigenvalues(i - 1); }
};

AddedMassMatrix discrete_added_mass(const Discretization& disc);

}  // namespace fsibench::field
