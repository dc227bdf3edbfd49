#include "fsibench/modal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsibench::modal {

namespace {

constexpr double kBlowup = 1e100;
constexpr double kNormFloor = 1e-14;

double tuple_norm(double u, double p, double eta, double w) {
    return std::sqrt(u * u + p * p + eta * eta + w * w);
}

void shift_histories(ModalState& s, double eta_new, double w_new, double u_new,
                     double p_new) {
    s.eta_m2 = s.eta_m1;
    s.eta_m1 = s.eta;
    s.eta = eta_new;
    s.w = w_new;
    s.u_sigma_m1 = s.u_sigma;
    s.u_sigma = u_new;
    s.p = p_new;
}

}  // namespace

ModalState rest_state(double eta0) {
    ModalState s;
    s.eta = s.eta_m1 = s.eta_m2 = eta0;
    return s;
}

ModalState monolithic_modal_step(const ModalState& s, double mu, const PhysicalParams& p,
                                 const TimeParams& t, double forcing) {
    const double dt = t.dt;
    const double ms = p.membrane_mass();
    const double denom = ms + p.beta * dt * dt + p.rho_f * mu;
    const double eta_new =
        ((ms + p.rho_f * mu) * (2.0 * s.eta - s.eta_m1) + dt * dt * forcing) / denom;
    const double w_new = (eta_new - s.eta) / dt;
    // pressure from the structure equation: p = inertia + stiffness - forcing
    const double p_new = ms * (eta_new - 2.0 * s.eta + s.eta_m1) / (dt * dt) +
                         p.beta * eta_new - forcing;
    ModalState out = s;
    shift_histories(out, eta_new, w_new, /*u_new=*/w_new, p_new);
    return out;
}

ScSolveResult sc_modal_solve(const ModalState& s, double mu, double alpha,
                             const CouplingConfig& cfg, const PhysicalParams& p,
                             const TimeParams& t, double forcing, WUpdate wupd) {
    if (!(alpha > 0.0)) throw std::domain_error("alpha must be > 0");
    const double dt = t.dt;
    const double ms_area = p.membrane_mass();
    const double ms = ms_area / (dt * dt) + p.beta;  // structure operator per unit eta
    const double hist = ms_area * (2.0 * s.eta - s.eta_m1) / (dt * dt) + forcing;

    // iterate k = 0 initialization per the algorithm
    double eta_k = s.eta;
    double w_k = s.w;
    double u_k = s.u_sigma;
    double p_k = s.p;

    ScSolveResult res;
    res.eta_iterates.push_back(eta_k);

    const double eta_scale = std::max(std::abs(s.eta), kNormFloor);
    double prev_deta = 0.0;

    for (int k = 0; k < cfg.max_iter; ++k) {
        const double u_next = (1.0 - alpha) * u_k + alpha * w_k;
        const double p_next =
            (1.0 - alpha) * p_k -
            mu * alpha * p.rho_f / dt * (w_k - s.u_sigma);
        const double eta_next =
            (p_next + alpha * hist + (1.0 - alpha) * (ms * eta_k - p_k)) / ms;
        double w_next;
        if (wupd == WUpdate::Standard) {
            w_next = (eta_next - s.eta) / dt;
        } else {
            w_next = (eta_next - alpha * s.eta - (1.0 - alpha) * eta_k) / dt +
                     (1.0 - alpha) * w_k;
        }

        const double inc = tuple_norm(u_next - u_k, p_next - p_k, eta_next - eta_k,
                                      w_next - w_k);
        const double cur = std::max(tuple_norm(u_next, p_next, eta_next, w_next), kNormFloor);
        const double rel = inc / cur;

        const double deta = std::abs(eta_next - eta_k);
        if (prev_deta > 0.0 && deta > 0.0) res.empirical_rate = deta / prev_deta;
        prev_deta = deta;

        u_k = u_next;
        p_k = p_next;
        eta_k = eta_next;
        w_k = w_next;
        res.eta_iterates.push_back(eta_k);
        res.iterations = k + 1;
        res.final_increment = rel;

        if (rel < cfg.tol) {
            res.converged = true;
            break;
        }
        if (std::abs(eta_k) > 1e12 * eta_scale) break;  // runaway iterate
    }

    ModalState out = s;
    shift_histories(out, eta_k, w_k, u_k, p_k);
    res.state = out;
    return res;
}

ModalState lc_modal_step(const ModalState& s, double mu, double alpha,
                         const PhysicalParams& p, const TimeParams& t, double forcing) {
    const double dt = t.dt;
    const double ms_area = p.membrane_mass();
    const double ms = ms_area / (dt * dt) + p.beta;

    const double u_new = (1.0 - alpha) * s.u_sigma + alpha * s.w;
    const double p_new =
        (1.0 - alpha) * s.p -
        mu * p.rho_f / dt *
            (u_new - s.u_sigma - (1.0 - alpha) * (s.u_sigma - s.u_sigma_m1));
    // lagged structure residual; vanishes identically at alpha = 1
    const double correction =
        ms_area * (s.eta - 2.0 * s.eta_m1 + s.eta_m2) / (dt * dt) + p.beta * s.eta -
        s.p - forcing;
    const double eta_new = (p_new + ms_area * (2.0 * s.eta - s.eta_m1) / (dt * dt) +
                            forcing + (1.0 - alpha) * correction) /
                           ms;
    const double w_new = (eta_new - s.eta) / dt;

    ModalState out = s;
    shift_histories(out, eta_new, w_new, u_new, p_new);
    return out;
}

GrowthReport detect_growth(std::span<const double> series) {
    if (series.size() < 50) throw std::invalid_argument("growth detection needs >= 50 samples");

    double peak = 0.0;
    for (double v : series) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return {false, 1.0};  // all-zero: stable by convention

    const size_t n = series.size();
    const size_t tail_len = std::max<size_t>(25, n / 2);
    const size_t begin = n - tail_len;

    // least-squares slope of log|x| over the tail, flooring zero crossings
    const double floor_val = peak * 1e-300;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t cnt = 0;
    for (size_t k = begin; k < n; ++k) {
        const double x = static_cast<double>(k - begin);
        const double y = std::log(std::max(std::abs(series[k]), floor_val));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    const double slope = (denom != 0.0) ? (cnt * sxy - sx * sy) / denom : 0.0;
    const double factor = std::exp(slope);
    return {factor > 1.0 + 1e-6, factor};
}

double ImpulseForcing::operator()(double time) const {
    if (duration <= 0.0 || time < 0.0 || time > duration) return 0.0;
    return amp * (1.0 - std::cos(2.0 * std::numbers::pi * time / duration));
}

RunReport run_modal(Scheme scheme, double mu, double alpha, const CouplingConfig& cfg,
                    const PhysicalParams& p, const TimeParams& t, double eta0,
                    const ImpulseForcing& forcing) {
    const auto t0 = std::chrono::steady_clock::now();
    ModalState s = rest_state(eta0);
    RunReport rep;
    const int n = t.n_steps();
    rep.eta_series.reserve(static_cast<size_t>(n));
    rep.w_series.reserve(static_cast<size_t>(n));

    for (int k = 0; k < n; ++k) {
        const double f = forcing(static_cast<double>(k + 1) * t.dt);
        switch (scheme) {
            case Scheme::Monolithic:
                s = monolithic_modal_step(s, mu, p, t, f);
                rep.iterations.push_back(1);
                rep.residuals.push_back(0.0);
                break;
            case Scheme::ScDnAlpha: {
                auto r = sc_modal_solve(s, mu, alpha, cfg, p, t, f);
                s = r.state;
                rep.iterations.push_back(r.iterations);
                rep.residuals.push_back(r.final_increment);
                if (!r.converged) rep.sc_diverged = true;
                break;
            }
            case Scheme::LcDnAlpha:
                s = lc_modal_step(s, mu, alpha, p, t, f);
                rep.iterations.push_back(1);
                rep.residuals.push_back(0.0);
                break;
        }
        rep.eta_series.push_back(s.eta);
        rep.w_series.push_back(s.w);
        rep.p_series.push_back(s.p);
        rep.u_series.push_back(s.u_sigma);
        if (std::abs(s.eta) > kBlowup || rep.sc_diverged) break;
    }

    const auto& cls = (p.beta == 0.0) ? rep.w_series : rep.eta_series;
    if (cls.size() >= 50) {
        const auto g = detect_growth(cls);
        rep.unstable = g.unstable;
        rep.growth_factor = g.growth_factor;
    } else if (cls.size() >= 2) {
        rep.unstable = true;  // blew up almost immediately
        // the per-step ratio has long converged to the dominant root here
        const size_t n = cls.size();
        if (cls[n - 2] != 0.0) rep.growth_factor = std::abs(cls[n - 1] / cls[n - 2]);
    } else if (!cls.empty()) {
        rep.unstable = true;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace fsibench::modal
