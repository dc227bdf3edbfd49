#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "fsibench/experiments.hpp"

namespace {

using namespace fsibench;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;  // key=value
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (key = value)");
    cmd->add_option("--out", opts.out_path, "output CSV path (stdout when omitted)");
    cmd->add_option("--set", opts.overrides, "override a config key, e.g. --set rho_s=0.1");
}

Config load_config(const CommonOpts& opts) {
    Config cfg = opts.config_path.empty() ? Config{} : parse_config(opts.config_path);
    for (const auto& ov : opts.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override must look like key=value: " + ov);
        apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (!opts.out_path.empty()) cfg.out_path = opts.out_path;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partitioned Dirichlet-Neumann coupling lab for the 2D channel benchmark"};
    app.require_subcommand(1);

    CommonOpts eigs_o, bounds_o, jury_o, sim_o, sweep_o, rich_o, refine_o;

    auto* eigs = app.add_subcommand("eigs", "added-mass spectrum, continuous and discrete");
    add_common(eigs, eigs_o);

    auto* bounds = app.add_subcommand("bounds", "per-mode convergence and stability bounds");
    add_common(bounds, bounds_o);

    auto* jury = app.add_subcommand("jury", "characteristic cubic, Jury verdicts, root magnitudes");
    add_common(jury, jury_o);
    double jury_alpha = 0.0;
    jury->add_option("--alpha", jury_alpha, "acceleration parameter");

    auto* sim = app.add_subcommand("simulate", "time-march one scheme and classify stability");
    add_common(sim, sim_o);
    std::string sim_scheme, sim_level;
    double sim_alpha = 0.0;
    int snapshot_every = 0;
    std::string snapshot_prefix = "snapshot";
    sim->add_option("--scheme", sim_scheme, "monolithic | sc | lc");
    sim->add_option("--level", sim_level, "modal | grid");
    sim->add_option("--alpha", sim_alpha, "acceleration parameter");
    sim->add_option("--snapshot-every", snapshot_every, "write field snapshots every N steps");
    sim->add_option("--snapshot-prefix", snapshot_prefix, "snapshot file prefix");

    auto* sweep = app.add_subcommand("sweep", "scan one parameter and classify each point");
    add_common(sweep, sweep_o);
    SweepAxis axis;
    std::string sweep_scale = "linear", sweep_scheme, sweep_level;
    sweep->add_option("--param", axis.param, "parameter to scan")->required();
    sweep->add_option("--from", axis.from, "start value")->required();
    sweep->add_option("--to", axis.to, "end value")->required();
    sweep->add_option("--steps", axis.steps, "number of points")->required();
    sweep->add_option("--scale", sweep_scale, "linear | log");
    sweep->add_option("--scheme", sweep_scheme, "monolithic | sc | lc");
    sweep->add_option("--level", sweep_level, "modal | grid");

    auto* rich = app.add_subcommand("richardson", "preconditioned Richardson on the block system");
    add_common(rich, rich_o);
    bool certify = false;
    double rich_alpha = 0.0;
    std::string rich_strategy;
    rich->add_flag("--certify", certify, "also certify the DN sub-step equivalence");
    rich->add_option("--alpha", rich_alpha, "fixed acceleration parameter");
    rich->add_option("--alpha-strategy", rich_strategy, "fixed | mr");

    auto* refine = app.add_subcommand("refine", "time-step refinement study against the monolithic run");
    add_common(refine, refine_o);
    std::vector<double> dt_list;
    std::string refine_scheme;
    double refine_alpha = 0.0;
    refine->add_option("--dt", dt_list, "time steps to test (two or more)");
    refine->add_option("--scheme", refine_scheme, "sc | lc");
    refine->add_option("--alpha", refine_alpha, "acceleration parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentSpec spec;
        if (eigs->parsed()) {
            spec.kind = ExperimentKind::Eigs;
            spec.cfg = load_config(eigs_o);
        } else if (bounds->parsed()) {
            spec.kind = ExperimentKind::Bounds;
            spec.cfg = load_config(bounds_o);
        } else if (jury->parsed()) {
            spec.kind = ExperimentKind::Jury;
            spec.cfg = load_config(jury_o);
            if (jury->count("--alpha")) apply_override(spec.cfg, "alpha", csv::format_double(jury_alpha));
        } else if (sim->parsed()) {
            spec.kind = ExperimentKind::Simulate;
            spec.cfg = load_config(sim_o);
            if (!sim_scheme.empty()) apply_override(spec.cfg, "scheme", sim_scheme);
            if (!sim_level.empty()) apply_override(spec.cfg, "level", sim_level);
            if (sim->count("--alpha")) apply_override(spec.cfg, "alpha", csv::format_double(sim_alpha));
            spec.snapshot_every = snapshot_every;
            spec.snapshot_prefix = snapshot_prefix;
        } else if (sweep->parsed()) {
            spec.kind = ExperimentKind::Sweep;
            spec.cfg = load_config(sweep_o);
            if (!sweep_scheme.empty()) apply_override(spec.cfg, "scheme", sweep_scheme);
            if (!sweep_level.empty()) apply_override(spec.cfg, "level", sweep_level);
            if (sweep_scale == "log") axis.log_scale = true;
            else if (sweep_scale != "linear") throw ConfigError("scale must be linear or log");
            spec.sweep = axis;
        } else if (rich->parsed()) {
            spec.kind = ExperimentKind::Richardson;
            spec.cfg = load_config(rich_o);
            if (rich->count("--alpha")) apply_override(spec.cfg, "alpha", csv::format_double(rich_alpha));
            if (!rich_strategy.empty()) apply_override(spec.cfg, "alpha_strategy", rich_strategy);
            spec.certify = certify;
        } else if (refine->parsed()) {
            spec.kind = ExperimentKind::Refine;
            spec.cfg = load_config(refine_o);
            if (!refine_scheme.empty()) apply_override(spec.cfg, "scheme", refine_scheme);
            if (refine->count("--alpha")) apply_override(spec.cfg, "alpha", csv::format_double(refine_alpha));
            spec.dt_list = dt_list;
        }
        spec.cfg.validate();
        return run_experiment(spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
