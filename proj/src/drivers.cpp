#include "fsibench/drivers.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fsibench::field {

namespace {
constexpr double kNormFloor = 1e-14;

double tuple_increment(const Eigen::VectorXd& du, const Eigen::VectorXd& dp,
                       const Eigen::VectorXd& deta, const Eigen::VectorXd& dw,
                       const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                       const Eigen::VectorXd& eta, const Eigen::VectorXd& w) {
    const double inc = std::sqrt(du.squaredNorm() + dp.squaredNorm() +
                                 deta.squaredNorm() + dw.squaredNorm());
    const double cur = std::sqrt(u.squaredNorm() + p.squaredNorm() +
                                 eta.squaredNorm() + w.squaredNorm());
    return inc / std::max(cur, kNormFloor);
}
}  // namespace

GridState initial_state(const Discretization& disc, double amp, int mode) {
    GridState s;
    s.p = Eigen::VectorXd::Zero(disc.np());
    s.u = Eigen::VectorXd::Zero(disc.ne());
    s.u_prev = Eigen::VectorXd::Zero(disc.ne());
    s.eta = amp * disc.mode_shape(mode);
    s.eta_m1 = s.eta;
    s.eta_m2 = s.eta;
    s.w = Eigen::VectorXd::Zero(disc.ns());
    s.u_sigma = Eigen::VectorXd::Zero(disc.ns());
    return s;
}

BenchmarkSolver::BenchmarkSolver(const Discretization& disc, const PhysicalParams& p,
                                 const TimeParams& t)
    : disc_(disc), phys_(p), time_(t) {
    p.validate();
    t.validate();
    ms_ = p.membrane_mass() / (t.dt * t.dt) + p.beta;

    // monolithic pressure operator: (dt/rho_f) L + hx/(ms dt) on interface rows
    SpMat A = disc.laplacian() * (t.dt / p.rho_f);
    const double shift = disc.grid().hx() / (ms_ * t.dt);
    std::vector<Eigen::Triplet<double>> ts;
    for (int j = 1; j < disc.grid().nx; ++j) {
        const int row = disc.pidx(j, disc.grid().ny);
        ts.emplace_back(row, row, shift);
    }
    SpMat S(disc.np(), disc.np());
    S.setFromTriplets(ts.begin(), ts.end());
    A += S;
    robin_.compute(A);
    if (robin_.info() != Eigen::Success)
        throw std::runtime_error("monolithic pressure factorization failed");
}

void BenchmarkSolver::monolithic_step(GridState& s, double p_in_next) const {
    const double dt = time_.dt;
    const double hx = disc_.grid().hx();
    const int ny = disc_.grid().ny;
    const Eigen::VectorXd& V = disc_.edge_volume();

    // s_j: structure history load
    Eigen::VectorXd hist =
        phys_.membrane_mass() * (2.0 * s.eta - s.eta_m1) / (dt * dt);

    // rhs = -B u^n - (dt/rho_f) B diag(1/V) lift p_in - hx (hist/(ms dt) - eta^n/dt) on sigma rows
    Eigen::VectorXd lifted = disc_.lift().cwiseQuotient(V) * p_in_next;
    Eigen::VectorXd rhs = -(disc_.B() * s.u) - (dt / phys_.rho_f) * (disc_.B() * lifted);
    for (int j = 1; j < disc_.grid().nx; ++j) {
        const int row = disc_.pidx(j, ny);
        const int k = disc_.sidx(j);
        rhs(row) -= hx * (hist(k) / (ms_ * dt) - s.eta(k) / dt);
    }

    Eigen::VectorXd p_new = robin_.solve(rhs);

    Eigen::VectorXd trace = disc_.sigma_trace(p_new);
    Eigen::VectorXd eta_new = (trace + hist) / ms_;
    Eigen::VectorXd w_new = (eta_new - s.eta) / dt;

    Eigen::VectorXd u_new =
        s.u + (dt / phys_.rho_f) *
                  (disc_.B().transpose() * p_new + disc_.lift() * p_in_next)
                      .cwiseQuotient(V);

    s.u_prev = s.u;
    s.u = u_new;
    s.p = p_new;
    s.eta_m2 = s.eta_m1;
    s.eta_m1 = s.eta;
    s.eta = eta_new;
    s.w = w_new;
    s.u_sigma = w_new;
    s.p_in = p_in_next;
    s.time += dt;
    s.step += 1;
}

Eigen::VectorXd BenchmarkSolver::fluid_poisson_rhs(const Eigen::VectorXd& u_n, double alpha,
                                                   const Eigen::VectorXd& w_k,
                                                   double p_in_inc) const {
    // L q = -alpha [ (rho_f/dt) B u^n + B diag(1/V) lift p_in + (rho_f/dt) Bsigma w_k ]
    const double dt = time_.dt;
    Eigen::VectorXd lifted = disc_.lift().cwiseQuotient(disc_.edge_volume()) * p_in_inc;
    return -alpha * ((phys_.rho_f / dt) * (disc_.B() * u_n) + disc_.B() * lifted +
                     (phys_.rho_f / dt) * (disc_.Bsigma() * w_k));
}

ScStepResult BenchmarkSolver::sc_step(GridState& s, double alpha, const CouplingConfig& cfg,
                                      double p_in_next, WUpdate wupd) const {
    const double dt = time_.dt;
    const Eigen::VectorXd& V = disc_.edge_volume();
    Eigen::VectorXd hist =
        phys_.membrane_mass() * (2.0 * s.eta - s.eta_m1) / (dt * dt);

    Eigen::VectorXd u_k = s.u, p_k = s.p;
    Eigen::VectorXd eta_k = s.eta, w_k = s.w, usig_k = s.u_sigma;
    Eigen::VectorXd ptr_k = disc_.sigma_trace(p_k);

    ScStepResult res;
    const double eta_scale = std::max(s.eta.norm(), kNormFloor);

    for (int k = 0; k < cfg.max_iter; ++k) {
        Eigen::VectorXd usig_next = (1.0 - alpha) * usig_k + alpha * w_k;
        Eigen::VectorXd q = disc_.solve_poisson(fluid_poisson_rhs(s.u, alpha, w_k, p_in_next));
        Eigen::VectorXd p_next = (1.0 - alpha) * p_k + q;
        Eigen::VectorXd u_next =
            alpha * s.u + (1.0 - alpha) * u_k +
            (dt / phys_.rho_f) *
                (disc_.B().transpose() * q + alpha * disc_.lift() * p_in_next)
                    .cwiseQuotient(V);
        Eigen::VectorXd ptr_next = disc_.sigma_trace(p_next);
        Eigen::VectorXd eta_next =
            (ptr_next + alpha * hist + (1.0 - alpha) * (ms_ * eta_k - ptr_k)) / ms_;
        Eigen::VectorXd w_next;
        if (wupd == WUpdate::Standard) {
            w_next = (eta_next - s.eta) / dt;
        } else {
            w_next = (eta_next - alpha * s.eta - (1.0 - alpha) * eta_k) / dt +
                     (1.0 - alpha) * w_k;
        }

        const double rel = tuple_increment(usig_next - usig_k, ptr_next - ptr_k,
                                           eta_next - eta_k, w_next - w_k, usig_next,
                                           ptr_next, eta_next, w_next);

        u_k = std::move(u_next);
        p_k = std::move(p_next);
        ptr_k = std::move(ptr_next);
        eta_k = std::move(eta_next);
        w_k = std::move(w_next);
        usig_k = std::move(usig_next);
        res.iterations = k + 1;
        res.final_increment = rel;
        if (rel < cfg.tol) {
            res.converged = true;
            break;
        }
        if (eta_k.norm() > 1e12 * eta_scale) break;
    }

    s.u_prev = s.u;
    s.u = u_k;
    s.p = p_k;
    s.eta_m2 = s.eta_m1;
    s.eta_m1 = s.eta;
    s.eta = eta_k;
    s.w = w_k;
    s.u_sigma = usig_k;
    s.p_in = p_in_next;
    s.time += dt;
    s.step += 1;
    return res;
}

std::vector<ScIterate> BenchmarkSolver::sc_iterates(const GridState& s, double alpha,
                                                    int k_max, double p_in_next,
                                                    WUpdate wupd) const {
    const double dt = time_.dt;
    const Eigen::VectorXd& V = disc_.edge_volume();
    Eigen::VectorXd hist =
        phys_.membrane_mass() * (2.0 * s.eta - s.eta_m1) / (dt * dt);

    std::vector<ScIterate> out;
    ScIterate it{s.u, s.p, s.u_sigma, s.eta, s.w};
    out.push_back(it);
    for (int k = 0; k < k_max; ++k) {
        Eigen::VectorXd usig_next = (1.0 - alpha) * it.u_sigma + alpha * it.w;
        Eigen::VectorXd q = disc_.solve_poisson(fluid_poisson_rhs(s.u, alpha, it.w, p_in_next));
        Eigen::VectorXd p_next = (1.0 - alpha) * it.p + q;
        Eigen::VectorXd u_next =
            alpha * s.u + (1.0 - alpha) * it.u +
            (dt / phys_.rho_f) *
                (disc_.B().transpose() * q + alpha * disc_.lift() * p_in_next)
                    .cwiseQuotient(V);
        Eigen::VectorXd eta_next = (disc_.sigma_trace(p_next) + alpha * hist +
                                    (1.0 - alpha) * (ms_ * it.eta - disc_.sigma_trace(it.p))) /
                                   ms_;
        Eigen::VectorXd w_next;
        if (wupd == WUpdate::Standard) {
            w_next = (eta_next - s.eta) / dt;
        } else {
            w_next = (eta_next - alpha * s.eta - (1.0 - alpha) * it.eta) / dt +
                     (1.0 - alpha) * it.w;
        }
        it = ScIterate{std::move(u_next), std::move(p_next), std::move(usig_next),
                       std::move(eta_next), std::move(w_next)};
        out.push_back(it);
    }
    return out;
}

void BenchmarkSolver::lc_step(GridState& s, double alpha, double p_in_next) const {
    const double dt = time_.dt;
    const Eigen::VectorXd& V = disc_.edge_volume();
    const double ms_area = phys_.membrane_mass();

    Eigen::VectorXd usig_new = (1.0 - alpha) * s.u_sigma + alpha * s.w;

    // L q = -[ (rho_f/dt)(B u^n - (1-a) B u^{n-1}) + B diag(1/V) lift dpin + (rho_f/dt) a Bsigma w^n ]
    const double p_in_inc = p_in_next - (1.0 - alpha) * s.p_in;
    Eigen::VectorXd lifted = disc_.lift().cwiseQuotient(V) * p_in_inc;
    Eigen::VectorXd rhs =
        -((phys_.rho_f / dt) * (disc_.B() * (s.u - (1.0 - alpha) * s.u_prev)) +
          disc_.B() * lifted +
          (phys_.rho_f / dt) * alpha * (disc_.Bsigma() * s.w));
    Eigen::VectorXd q = disc_.solve_poisson(rhs);
    Eigen::VectorXd p_new = (1.0 - alpha) * s.p + q;

    Eigen::VectorXd u_new =
        s.u + (1.0 - alpha) * (s.u - s.u_prev) +
        (dt / phys_.rho_f) *
            (disc_.B().transpose() * q + disc_.lift() * p_in_inc).cwiseQuotient(V);

    Eigen::VectorXd ptr_old = disc_.sigma_trace(s.p);
    Eigen::VectorXd hist = ms_area * (2.0 * s.eta - s.eta_m1) / (dt * dt);
    Eigen::VectorXd corr = ms_area * (s.eta - 2.0 * s.eta_m1 + s.eta_m2) / (dt * dt) +
                           phys_.beta * s.eta - ptr_old;
    Eigen::VectorXd eta_new =
        (disc_.sigma_trace(p_new) + hist + (1.0 - alpha) * corr) / ms_;
    Eigen::VectorXd w_new = (eta_new - s.eta) / dt;

    s.u_prev = s.u;
    s.u = u_new;
    s.p = p_new;
    s.eta_m2 = s.eta_m1;
    s.eta_m1 = s.eta;
    s.eta = eta_new;
    s.w = w_new;
    s.u_sigma = usig_new;
    s.p_in = p_in_next;
    s.time += dt;
    s.step += 1;
}

double BenchmarkSolver::sc_correction_max(const GridState& s, double alpha) const {
    const double dt = time_.dt;
    const double f = 1.0 - alpha;
    // momentum: (1-a)[rho_f u/dt + grad p]; iterate quantities sampled from the state
    Eigen::VectorXd mom =
        f * ((phys_.rho_f / dt) * s.u -
             (disc_.B().transpose() * s.p + disc_.lift() * s.p_in)
                 .cwiseQuotient(disc_.edge_volume()));
    Eigen::VectorXd div = f * disc_.divergence(s.u, s.u_sigma);
    Eigen::VectorXd iface = f * s.u_sigma;
    Eigen::VectorXd str = f * (ms_ * s.eta - disc_.sigma_trace(s.p));
    double mx = 0.0;
    mx = std::max(mx, mom.cwiseAbs().maxCoeff());
    mx = std::max(mx, div.cwiseAbs().maxCoeff());
    mx = std::max(mx, iface.cwiseAbs().maxCoeff());
    mx = std::max(mx, str.cwiseAbs().maxCoeff());
    return mx;
}

double BenchmarkSolver::lc_correction_max(const GridState& s, double alpha) const {
    const double dt = time_.dt;
    const double f = 1.0 - alpha;
    Eigen::VectorXd mom =
        f * ((phys_.rho_f / dt) * (s.u - s.u_prev) -
             (disc_.B().transpose() * s.p + disc_.lift() * s.p_in)
                 .cwiseQuotient(disc_.edge_volume()));
    Eigen::VectorXd div = f * disc_.divergence(s.u, s.u_sigma);
    Eigen::VectorXd iface = f * s.u_sigma;
    Eigen::VectorXd str =
        f * (phys_.membrane_mass() * (s.eta - 2.0 * s.eta_m1 + s.eta_m2) / (dt * dt) +
             phys_.beta * s.eta - disc_.sigma_trace(s.p));
    double mx = 0.0;
    mx = std::max(mx, mom.cwiseAbs().maxCoeff());
    mx = std::max(mx, div.cwiseAbs().maxCoeff());
    mx = std::max(mx, iface.cwiseAbs().maxCoeff());
    mx = std::max(mx, str.cwiseAbs().maxCoeff());
    return mx;
}

Eigen::VectorXd pressure_node_field(const Discretization& disc, const Eigen::VectorXd& p) {
    const int nx = disc.grid().nx, ny = disc.grid().ny;
    Eigen::VectorXd f = Eigen::VectorXd::Zero((nx + 1) * (ny + 1));
    for (int m = 0; m <= ny; ++m)
        for (int j = 1; j < nx; ++j) f(m * (nx + 1) + j) = p(disc.pidx(j, m));
    return f;
}

void write_field_snapshot(const std::string& path, const Discretization& disc,
                          const Eigen::VectorXd& node_values, double t) {
    const int nx = disc.grid().nx, ny = disc.grid().ny;
    if (node_values.size() != (nx + 1) * (ny + 1))
        throw std::invalid_argument("snapshot expects a full node field");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open snapshot file: " + path);
    out << "# " << nx << " " << ny << " " << disc.grid().hx() << " " << disc.grid().hy()
        << " " << t << "\n";
    out.precision(17);
    for (int m = 0; m <= ny; ++m) {
        for (int j = 0; j <= nx; ++j) {
            if (j) out << ' ';
            out << node_values(m * (nx + 1) + j);
        }
        out << '\n';
    }
}

}  // namespace fsibench::field
