#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fsibench/config.hpp"
#include "fsibench/csv.hpp"

namespace fsibench {

/// What the CLI asks the engine to run.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Simulate;
    Config cfg;
    std::optional<SweepAxis> sweep;  // Sweep only
    std::vector<double> dt_list;     // Refine only
    bool certify = false;            // Richardson: also verify the DN equivalence
    int snapshot_every = 0;          // grid simulate: dump every N steps
    std::string snapshot_prefix = "snapshot";

    void validate() const;
};

/// Exit codes of run_experiment: 0 success, 2 instability detected in a
/// simulate/sweep/refine run, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnstable = 2;

/// Number of sweep workers: FSIBENCH_THREADS when set, else all cores.
int worker_count();

/// Runs the experiment, writes its CSV artifact (when an output path is set),
/// prints a short summary to stdout, and returns the exit code.
int run_experiment(const ExperimentSpec& spec);

// Individual experiment runners; each fills a CSV table. These are the
// building blocks run_experiment dispatches to and what the acceptance suite
// drives directly.
csv::Writer run_eigs(const Config& cfg);
csv::Writer run_bounds(const Config& cfg);
csv::Writer run_jury(const Config& cfg);

struct SimulateOutcome {
    csv::Writer table;
    bool unstable = false;
    double growth_factor = 1.0;
    bool sc_diverged = false;
};
SimulateOutcome run_simulate(const Config& cfg, int snapshot_every = 0,
                             const std::string& snapshot_prefix = "snapshot");

struct SweepOutcome {
    csv::Writer table;
    bool any_unstable = false;
};
SweepOutcome run_sweep(const Config& cfg, const SweepAxis& axis);

struct RichardsonOutcome {
    csv::Writer table;
    bool converged = false;
    bool certified = true;  // only meaningful when certification was requested
    double max_deviation = 0.0;
    int iterations = 0;
};
RichardsonOutcome run_richardson(const Config& cfg, bool certify);

struct RefineOutcome {
    csv::Writer table;
    bool unstable = false;
    std::vector<double> errors;
    std::vector<double> orders;
};
RefineOutcome refine_study(const Config& cfg, const std::vector<double>& dt_list);

}  // namespace fsibench
