#include "fsibench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <iostream>
#include <thread>

#include "fsibench/block_system.hpp"
#include "fsibench/drivers.hpp"
#include "fsibench/lc_analysis.hpp"
#include "fsibench/modal.hpp"
#include "fsibench/spectrum.hpp"

namespace fsibench {

namespace {

using csv::format_double;

std::string flag(bool b) { return b ? "1" : "0"; }

double sigma_l2(const field::Discretization& disc, const Eigen::VectorXd& v) {
    return std::sqrt(disc.grid().hx()) * v.norm();
}

std::vector<double> axis_values(const SweepAxis& ax) {
    std::vector<double> vals(static_cast<size_t>(ax.steps));
    for (int k = 0; k < ax.steps; ++k) {
        const double s = (ax.steps == 1) ? 0.0 : static_cast<double>(k) / (ax.steps - 1);
        if (ax.log_scale) {
            vals[static_cast<size_t>(k)] =
                ax.from * std::pow(ax.to / ax.from, s);
        } else {
            vals[static_cast<size_t>(k)] = ax.from + s * (ax.to - ax.from);
        }
    }
    return vals;
}

double fixed_alpha(const Config& cfg) {
    if (cfg.coupling.alpha.kind != AlphaStrategy::Kind::Fixed)
        throw std::runtime_error("this experiment needs a fixed alpha");
    return cfg.coupling.alpha.value;
}

}  // namespace

void ExperimentSpec::validate() const {
    cfg.validate();
    if (kind == ExperimentKind::Sweep) {
        if (!sweep) throw ConfigError("sweep experiment needs an axis");
        if (sweep->steps < 2) throw ConfigError("sweep needs steps >= 2");
        Config probe = cfg;  // reject unknown parameter names up front
        apply_override(probe, sweep->param, format_double(sweep->from));
    }
    if (kind == ExperimentKind::Refine && dt_list.size() < 2)
        throw ConfigError("refine experiment needs at least two dt values");
}

int worker_count() {
    if (const char* env = std::getenv("FSIBENCH_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

csv::Writer run_eigs(const Config& cfg) {
    csv::Writer out({"mode", "mu_continuous", "mu_discrete", "rel_gap"});
    field::Discretization disc(field::Grid{cfg.nx, cfg.ny, cfg.phys.L, cfg.phys.R});
    const auto am = field::discrete_added_mass(disc);
    for (int i = 1; i <= cfg.n_modes; ++i) {
        const double mu_c = added_mass_eigenvalue(i, cfg.phys.L, cfg.phys.R);
        const double mu_d = (i <= am.eigenvalues.size()) ? am.mu(i) : 0.0;
        out.append_row({std::to_string(i), format_double(mu_c), format_double(mu_d),
                        format_double(std::abs(mu_d - mu_c) / mu_c)});
    }
    return out;
}

csv::Writer run_bounds(const Config& cfg) {
    csv::Writer out({"mode", "mu", "sc_alpha_max", "sc_alpha_opt", "mass_ratio",
                     "bound_applicable", "lc_alpha_bar_mode"});
    for (int i = 1; i <= cfg.n_modes; ++i) {
        const double mu = added_mass_eigenvalue(i, cfg.phys.L, cfg.phys.R);
        const double r = cfg.phys.membrane_mass() / (cfg.phys.rho_f * mu);
        const bool ok = r < 1.0;
        out.append_row({std::to_string(i), format_double(mu),
                        format_double(sc_alpha_bound_mode(mu, cfg.phys, cfg.time)),
                        format_double(sc_alpha_opt(mu, cfg.phys, cfg.time)),
                        format_double(r), flag(ok),
                        format_double(ok ? 2.0 * r / (r + 1.0) : 0.0)});
    }
    return out;
}

csv::Writer run_jury(const Config& cfg) {
    const double alpha = fixed_alpha(cfg);
    csv::Writer out({"mode", "alpha", "dt", "a3", "a2", "a1", "a0", "cond1", "cond2",
                     "cond3", "cond4", "stable", "root1", "root2", "root3",
                     "unstable_predicate"});
    for (const auto& m : analyze_modes(cfg.n_modes, alpha, cfg.phys, cfg.time)) {
        out.append_row({std::to_string(m.index), format_double(alpha),
                        format_double(cfg.time.dt), format_double(m.lc_coeffs.a3),
                        format_double(m.lc_coeffs.a2), format_double(m.lc_coeffs.a1),
                        format_double(m.lc_coeffs.a0), flag(m.jury.cond1),
                        flag(m.jury.cond2), flag(m.jury.cond3), flag(m.jury.cond4),
                        flag(m.jury.stable), format_double(m.root_magnitudes[0]),
                        format_double(m.root_magnitudes[1]),
                        format_double(m.root_magnitudes[2]),
                        flag(m.lc_unstable_predicate)});
    }
    return out;
}

SimulateOutcome run_simulate(const Config& cfg, int snapshot_every,
                             const std::string& snapshot_prefix) {
    SimulateOutcome res{csv::Writer({"mode", "step", "t", "eta", "w", "p_trace",
                                     "u_trace", "iterations", "residual"})};
    const modal::ImpulseForcing forcing{cfg.force_amp, cfg.force_duration};

    if (cfg.modal_level) {
        const double alpha = (cfg.scheme == Scheme::Monolithic) ? 1.0 : fixed_alpha(cfg);
        for (int i = 1; i <= cfg.n_modes; ++i) {
            const double mu = added_mass_eigenvalue(i, cfg.phys.L, cfg.phys.R);
            const double eta0 = (i == cfg.init_mode) ? cfg.init_amp : 0.0;
            auto rep = modal::run_modal(cfg.scheme, mu, alpha, cfg.coupling, cfg.phys,
                                        cfg.time, eta0, forcing);
            for (size_t k = 0; k < rep.eta_series.size(); ++k) {
                res.table.append_row(
                    {std::to_string(i), std::to_string(k + 1),
                     format_double((static_cast<double>(k) + 1.0) * cfg.time.dt),
                     format_double(rep.eta_series[k]), format_double(rep.w_series[k]),
                     format_double(rep.p_series[k]), format_double(rep.u_series[k]),
                     std::to_string(rep.iterations[k]), format_double(rep.residuals[k])});
            }
            res.unstable = res.unstable || rep.unstable;
            res.sc_diverged = res.sc_diverged || rep.sc_diverged;
            res.growth_factor = std::max(res.growth_factor, rep.growth_factor);
        }
        return res;
    }

    // grid level
    field::Grid g{cfg.nx, cfg.ny, cfg.phys.L, cfg.phys.R};
    field::Discretization disc(g);
    field::BenchmarkSolver solver(disc, cfg.phys, cfg.time);
    field::GridState s = field::initial_state(disc, cfg.init_amp, cfg.init_mode);

    csv::Writer grid_table({"step", "t", "iterations", "residual", "eta_l2", "w_l2",
                            "div_residual"});
    std::vector<double> eta_norms, w_norms;
    const int n = cfg.time.n_steps();
    const bool mr = cfg.scheme == Scheme::ScDnAlpha &&
                    cfg.coupling.alpha.kind == AlphaStrategy::Kind::MinimumResidual;
    const double alpha =
        (cfg.scheme == Scheme::Monolithic || mr) ? 1.0 : fixed_alpha(cfg);

    // the minimum-residual strategy runs through the algebraic system; the
    // matrix is assembled once, only the right-hand side moves per step
    std::optional<block::BlockSystem> sys;
    std::optional<block::BlockPreconditioner> precond;
    if (mr) {
        sys.emplace(block::assemble_block_system(disc, s, cfg.phys, cfg.time));
        precond.emplace(*sys);
    }

    bool diverged = false;
    for (int k = 0; k < n; ++k) {
        const double p_in = forcing(static_cast<double>(k + 1) * cfg.time.dt);
        int its = 1;
        double resid = 0.0;
        switch (cfg.scheme) {
            case Scheme::Monolithic:
                solver.monolithic_step(s, p_in);
                break;
            case Scheme::ScDnAlpha: {
                if (mr) {
                    block::update_rhs(*sys, s, p_in);
                    Eigen::VectorXd x0 = sys->pack(s.u, s.p, s.u_sigma, s.eta, s.w);
                    auto rr = block::richardson_iterate(*sys, *precond, x0,
                                                        cfg.coupling.alpha, cfg.coupling);
                    its = rr.iterations;
                    resid = rr.residual_history.back();
                    if (rr.status != block::RichardsonResult::Status::Converged)
                        diverged = true;
                    block::apply_solution(*sys, rr.x, s, p_in);
                } else {
                    auto r = solver.sc_step(s, alpha, cfg.coupling, p_in);
                    its = r.iterations;
                    resid = r.final_increment;
                    if (!r.converged) diverged = true;
                }
                break;
            }
            case Scheme::LcDnAlpha:
                solver.lc_step(s, alpha, p_in);
                break;
        }
        eta_norms.push_back(sigma_l2(disc, s.eta));
        w_norms.push_back(sigma_l2(disc, s.w));
        const double divres = disc.divergence(s.u, s.u_sigma).cwiseAbs().maxCoeff();
        grid_table.append_row({std::to_string(k + 1), format_double(s.time),
                               std::to_string(its), format_double(resid),
                               format_double(eta_norms.back()),
                               format_double(w_norms.back()), format_double(divres)});
        if (snapshot_every > 0 && (k + 1) % snapshot_every == 0) {
            field::write_field_snapshot(
                snapshot_prefix + "_p_" + std::to_string(k + 1) + ".txt", disc,
                field::pressure_node_field(disc, s.p), s.time);
        }
        if (diverged || eta_norms.back() > 1e100) break;
    }

    const auto& cls = (cfg.phys.beta == 0.0) ? w_norms : eta_norms;
    if (cls.size() >= 50) {
        const auto gr = modal::detect_growth(cls);
        res.unstable = gr.unstable;
        res.growth_factor = gr.growth_factor;
    } else if (diverged || (!cls.empty() && cls.back() > 1e100)) {
        res.unstable = true;
    }
    res.sc_diverged = diverged;
    res.table = std::move(grid_table);
    return res;
}

SweepOutcome run_sweep(const Config& cfg, const SweepAxis& axis) {
    SweepOutcome res{csv::Writer({"param", "value", "converged", "avg_iterations",
                                  "max_iterations", "unstable", "growth_factor"})};
    const auto values = axis_values(axis);
    struct PointResult {
        double value = 0.0;
        bool converged = true;
        double avg_its = 0.0;
        int max_its = 0;
        bool unstable = false;
        double growth = 1.0;
    };
    std::vector<PointResult> results(values.size());

    std::atomic<size_t> next{0};
    auto work = [&]() {
        while (true) {
            const size_t idx = next.fetch_add(1);
            if (idx >= values.size()) return;
            Config c = cfg;
            apply_override(c, axis.param, format_double(values[idx]));
            c.validate();
            PointResult pr;
            pr.value = values[idx];
            auto sim = run_simulate(c);
            pr.unstable = sim.unstable;
            pr.growth = sim.growth_factor;
            pr.converged = !sim.sc_diverged;
            // iteration statistics from the per-step table
            double tot = 0.0;
            int cnt = 0;
            const auto& hdr = sim.table.header();
            size_t it_col = 0;
            for (size_t i = 0; i < hdr.size(); ++i)
                if (hdr[i] == "iterations") it_col = i;
            const auto parsed = csv::parse(sim.table.to_string());
            for (const auto& row : parsed.rows) {
                const int its = std::atoi(row[it_col].c_str());
                tot += its;
                pr.max_its = std::max(pr.max_its, its);
                ++cnt;
            }
            pr.avg_its = cnt ? tot / cnt : 0.0;
            results[idx] = pr;
        }
    };
    const int n_workers = std::max(1, std::min<int>(worker_count(),
                                                    static_cast<int>(values.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    for (const auto& pr : results) {  // deterministic, axis order
        res.table.append_row({axis.param, format_double(pr.value), flag(pr.converged),
                              format_double(pr.avg_its), std::to_string(pr.max_its),
                              flag(pr.unstable), format_double(pr.growth)});
        res.any_unstable = res.any_unstable || pr.unstable || !pr.converged;
    }
    return res;
}

RichardsonOutcome run_richardson(const Config& cfg, bool certify) {
    RichardsonOutcome res{csv::Writer({"k", "residual", "increment", "alpha"})};

    field::Grid g{cfg.nx, cfg.ny, cfg.phys.L, cfg.phys.R};
    field::Discretization disc(g);
    field::BenchmarkSolver solver(disc, cfg.phys, cfg.time);
    field::GridState s = field::initial_state(disc, cfg.init_amp, cfg.init_mode);
    // warm the state so the assembled system has non-trivial histories
    const modal::ImpulseForcing forcing{cfg.force_amp, cfg.force_duration};
    for (int k = 0; k < 3; ++k)
        solver.monolithic_step(s, forcing((k + 1) * cfg.time.dt));

    auto sys = block::assemble_block_system(disc, s, cfg.phys, cfg.time, 0.0);
    block::BlockPreconditioner P(sys);
    Eigen::VectorXd x0 = sys.pack(s.u, s.p, s.u_sigma, s.eta, s.w);
    auto rr = block::richardson_iterate(sys, P, x0, cfg.coupling.alpha, cfg.coupling);
    for (size_t k = 0; k < rr.residual_history.size(); ++k) {
        res.table.append_row(
            {std::to_string(k), format_double(rr.residual_history[k]),
             format_double(k == 0 ? 0.0 : rr.increment_history[k - 1]),
             format_double(k == 0 || rr.alphas.size() < k ? 0.0 : rr.alphas[k - 1])});
    }
    res.converged = rr.status == block::RichardsonResult::Status::Converged;
    res.iterations = rr.iterations;

    if (certify) {
        const double alpha = cfg.coupling.alpha.kind == AlphaStrategy::Kind::Fixed
                                 ? cfg.coupling.alpha.value
                                 : 1.0;
        auto rep = block::certify_equivalence(solver, s, alpha, 20);
        res.certified = rep.pass;
        res.max_deviation = rep.max_rel_deviation;
    }
    return res;
}

RefineOutcome refine_study(const Config& cfg, const std::vector<double>& dt_list) {
    RefineOutcome res{csv::Writer({"dt", "error_l2", "observed_order"})};
    field::Grid g{cfg.nx, cfg.ny, cfg.phys.L, cfg.phys.R};
    field::Discretization disc(g);
    const modal::ImpulseForcing forcing{cfg.force_amp, cfg.force_duration};

    // reference for the SC scheme: monolithic at dt_min / 8
    double dt_min = dt_list.front();
    for (double d : dt_list) dt_min = std::min(dt_min, d);
    Eigen::VectorXd reference;
    if (cfg.scheme == Scheme::ScDnAlpha) {
        TimeParams tref{dt_min / 8.0, cfg.time.t_final};
        field::BenchmarkSolver sref(disc, cfg.phys, tref);
        field::GridState s = field::initial_state(disc, cfg.init_amp, cfg.init_mode);
        for (int k = 0; k < tref.n_steps(); ++k)
            sref.monolithic_step(s, forcing((k + 1) * tref.dt));
        reference = s.eta;
    }

    for (size_t d = 0; d < dt_list.size(); ++d) {
        TimeParams t{dt_list[d], cfg.time.t_final};
        field::BenchmarkSolver solver(disc, cfg.phys, t);

        field::GridState s = field::initial_state(disc, cfg.init_amp, cfg.init_mode);
        std::vector<double> eta_norms;
        for (int k = 0; k < t.n_steps(); ++k) {
            const double p_in = forcing((k + 1) * t.dt);
            if (cfg.scheme == Scheme::LcDnAlpha) {
                solver.lc_step(s, fixed_alpha(cfg), p_in);
            } else {
                auto r = solver.sc_step(s, fixed_alpha(cfg), cfg.coupling, p_in);
                if (!r.converged) res.unstable = true;
            }
            eta_norms.push_back(sigma_l2(disc, s.eta));
            if (eta_norms.back() > 1e100) { res.unstable = true; break; }
        }
        if (!res.unstable && eta_norms.size() >= 50)
            res.unstable = modal::detect_growth(eta_norms).unstable;
        if (res.unstable) return res;

        double err;
        if (cfg.scheme == Scheme::ScDnAlpha) {
            err = sigma_l2(disc, s.eta - reference);
        } else {
            field::BenchmarkSolver mono(disc, cfg.phys, t);
            field::GridState m = field::initial_state(disc, cfg.init_amp, cfg.init_mode);
            for (int k = 0; k < t.n_steps(); ++k)
                mono.monolithic_step(m, forcing((k + 1) * t.dt));
            err = sigma_l2(disc, s.eta - m.eta);
        }
        res.errors.push_back(err);
        double order = std::numeric_limits<double>::quiet_NaN();
        if (d > 0) {
            order = std::log(res.errors[d - 1] / res.errors[d]) /
                    std::log(dt_list[d - 1] / dt_list[d]);
            res.orders.push_back(order);
        }
        res.table.append_row({format_double(dt_list[d]), format_double(err),
                              format_double(order)});
    }
    return res;
}

int run_experiment(const ExperimentSpec& spec) {
    try {
        spec.validate();
        int code = kExitOk;
        csv::Writer table({"x"});
        switch (spec.kind) {
            case ExperimentKind::Eigs:
                table = run_eigs(spec.cfg);
                break;
            case ExperimentKind::Bounds:
                table = run_bounds(spec.cfg);
                break;
            case ExperimentKind::Jury:
                table = run_jury(spec.cfg);
                break;
            case ExperimentKind::Simulate: {
                auto r = run_simulate(spec.cfg, spec.snapshot_every, spec.snapshot_prefix);
                table = std::move(r.table);
                std::cout << (r.unstable || r.sc_diverged ? "unstable" : "stable")
                          << " growth_factor=" << r.growth_factor << "\n";
                if (r.unstable || r.sc_diverged) code = kExitUnstable;
                break;
            }
            case ExperimentKind::Sweep: {
                auto r = run_sweep(spec.cfg, *spec.sweep);
                table = std::move(r.table);
                break;
            }
            case ExperimentKind::Richardson: {
                auto r = run_richardson(spec.cfg, spec.certify);
                table = std::move(r.table);
                std::cout << (r.converged ? "converged" : "not converged") << " in "
                          << r.iterations << " iterations\n";
                if (spec.certify) {
                    std::cout << "equivalence max deviation " << r.max_deviation
                              << (r.certified ? " (pass)" : " (FAIL)") << "\n";
                    if (!r.certified) code = kExitError;
                }
                break;
            }
            case ExperimentKind::Refine: {
                auto r = refine_study(spec.cfg, spec.dt_list);
                table = std::move(r.table);
                if (r.unstable) {
                    std::cout << "instability detected during refinement\n";
                    code = kExitUnstable;
                }
                break;
            }
        }
        if (!spec.cfg.out_path.empty()) table.save(spec.cfg.out_path);
        else std::cout << table.to_string();
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace fsibench
