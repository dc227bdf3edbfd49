#include "fsibench/discretization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fsibench::field {

Discretization::Discretization(const Grid& g, PoissonBackend backend)
    : grid_(g), backend_(backend) {
    g.validate();
    const int nx = g.nx, ny = g.ny;
    const double hx = g.hx(), hy = g.hy();

    np_ = (nx - 1) * (ny + 1);
    nxe_ = nx * (ny + 1);
    ne_ = nxe_ + (nx - 1) * ny;
    ns_ = nx - 1;

    vol_.resize(ne_);
    for (int m = 0; m <= ny; ++m) {
        const double ly = (m == 0 || m == ny) ? hy / 2.0 : hy;
        for (int j = 0; j < nx; ++j) vol_(xedge(j, m)) = ly * hx;
    }
    for (int m = 0; m < ny; ++m)
        for (int j = 1; j < nx; ++j) vol_(yedge(j, m)) = hx * hy;

    area_.resize(np_);
    for (int m = 0; m <= ny; ++m) {
        const double ly = (m == 0 || m == ny) ? hy / 2.0 : hy;
        for (int j = 1; j < nx; ++j) area_(pidx(j, m)) = ly * hx;
    }

    // integrated divergence: outflow positive through east/north dual faces
    std::vector<Eigen::Triplet<double>> tb, tbs, tl;
    for (int m = 0; m <= ny; ++m) {
        const double ly = (m == 0 || m == ny) ? hy / 2.0 : hy;
        for (int j = 1; j < nx; ++j) {
            const int row = pidx(j, m);
            tb.emplace_back(row, xedge(j, m), ly);       // east face
            tb.emplace_back(row, xedge(j - 1, m), -ly);  // west face
            if (m < ny) tb.emplace_back(row, yedge(j, m), hx);
            if (m > 0) tb.emplace_back(row, yedge(j, m - 1), -hx);
            if (m == ny) tbs.emplace_back(row, sidx(j), hx);  // interface flux
        }
    }
    B_.resize(np_, ne_);
    B_.setFromTriplets(tb.begin(), tb.end());
    Bsig_.resize(np_, ns_);
    Bsig_.setFromTriplets(tbs.begin(), tbs.end());

    // SPD graph Laplacian; equals B diag(1/V) B^T
    auto add_edge = [&tl](int a, int b, double w) {
        tl.emplace_back(a, a, w);
        if (b >= 0) {
            tl.emplace_back(b, b, w);
            tl.emplace_back(a, b, -w);
            tl.emplace_back(b, a, -w);
        }
    };
    for (int m = 0; m <= ny; ++m) {
        const double ly = (m == 0 || m == ny) ? hy / 2.0 : hy;
        const double wx = ly / hx;
        for (int j = 1; j < nx; ++j) {
            if (j + 1 < nx) add_edge(pidx(j, m), pidx(j + 1, m), wx);
        }
        // edges touching the Dirichlet strips ground the end nodes
        tl.emplace_back(pidx(1, m), pidx(1, m), wx);
        tl.emplace_back(pidx(nx - 1, m), pidx(nx - 1, m), wx);
    }
    const double wy = g.hx() / hy;
    for (int m = 0; m < ny; ++m)
        for (int j = 1; j < nx; ++j) add_edge(pidx(j, m), pidx(j, m + 1), wy);
    L_.resize(np_, np_);
    L_.setFromTriplets(tl.begin(), tl.end());

    lift_ = Eigen::VectorXd::Zero(ne_);
    for (int m = 0; m <= ny; ++m) {
        const double ly = (m == 0 || m == ny) ? hy / 2.0 : hy;
        lift_(xedge(0, m)) = ly;  // inlet-adjacent edges, unit inlet pressure
    }

    if (backend_ == PoissonBackend::Direct) {
        solver_.compute(L_);
        if (solver_.info() != Eigen::Success)
            throw std::runtime_error("pressure Laplacian factorization failed");
    } else {
        cg_.setTolerance(1e-12);
        cg_.setMaxIterations(20 * np_);
        cg_.compute(L_);
        if (cg_.info() != Eigen::Success)
            throw std::runtime_error("pressure Laplacian CG setup failed");
    }
}

Eigen::VectorXd Discretization::solve_poisson(const Eigen::VectorXd& rhs) const {
    if (backend_ == PoissonBackend::Direct) {
        Eigen::VectorXd x = solver_.solve(rhs);
        if (solver_.info() != Eigen::Success)
            throw std::runtime_error("pressure solve failed");
        return x;
    }
    Eigen::VectorXd x = cg_.solve(rhs);
    if (cg_.info() != Eigen::Success)
        throw std::runtime_error("pressure CG solve did not converge");
    return x;
}

Eigen::VectorXd Discretization::sigma_trace(const Eigen::VectorXd& p) const {
    Eigen::VectorXd tr(ns_);
    for (int j = 1; j < grid_.nx; ++j) tr(sidx(j)) = p(pidx(j, grid_.ny));
    return tr;
}

Eigen::VectorXd Discretization::divergence(const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& u_sigma) const {
    return B_ * u + Bsig_ * u_sigma;
}

double Discretization::mode_coefficient(const Eigen::VectorXd& sigma_vec, int i) const {
    const int nx = grid_.nx;
    double acc = 0.0;
    for (int j = 1; j < nx; ++j)
        acc += sigma_vec(sidx(j)) * std::sin(i * std::numbers::pi * j / nx);
    return 2.0 * acc / nx;
}

Eigen::VectorXd Discretization::mode_shape(int i) const {
    const int nx = grid_.nx;
    Eigen::VectorXd v(ns_);
    for (int j = 1; j < nx; ++j) v(sidx(j)) = std::sin(i * std::numbers::pi * j / nx);
    return v;
}

AddedMassMatrix discrete_added_mass(const Discretization& disc) {
    const int ns = disc.ns();
    const int ny = disc.grid().ny;
    const double hx = disc.grid().hx();

    AddedMassMatrix am;
    am.M.resize(ns, ns);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(disc.np());
    for (int k = 1; k <= ns; ++k) {
        g(disc.pidx(k, ny)) = hx;
        am.M.col(k - 1) = disc.sigma_trace(disc.solve_poisson(g));
        g(disc.pidx(k, ny)) = 0.0;
    }
    // symmetrize roundoff before the eigensolve
    Eigen::MatrixXd sym = 0.5 * (am.M + am.M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    am.eigenvalues = es.eigenvalues().reverse();
    am.eigenvectors = es.eigenvectors().rowwise().reverse();
    return am;
}

}  // namespace fsibench::field
