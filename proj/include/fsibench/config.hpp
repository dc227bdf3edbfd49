#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsibench/params.hpp"

namespace fsibench {

/// Parse or validation failure, carrying the offending line when known.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// One sweep axis: a named parameter scanned from..to over `steps` points.
struct SweepAxis {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
    bool log_scale = false;
};

enum class ExperimentKind { Eigs, Bounds, Jury, Simulate, Sweep, Richardson, Refine };

/// Full experiment description: physics + time + coupling + what to run.
struct Config {
    PhysicalParams phys;
    TimeParams time;
    CouplingConfig coupling;

    Scheme scheme = Scheme::ScDnAlpha;
    bool modal_level = true;  // modal or grid simulators
    int n_modes = 10;
    int nx = 120;
    int ny = 20;

    double init_amp = 1e-3;  // initial interface displacement amplitude
    int init_mode = 1;       // sine mode of the initial displacement
    double force_amp = 0.0;  // inlet / per-mode impulse amplitude
    double force_duration = 0.0;

    std::string out_path;

    void validate() const;
};

/// Flat key = value file with '#' comments; missing keys keep the reference
/// defaults. Unknown keys, non-numeric values, and violated invariants are
/// reported with their line number.
Config parse_config(const std::string& path);

/// Parses the in-memory text of a config file (used by the CLI for override
/// strings and by tests).
Config parse_config_text(const std::string& text);

/// Applies a single "key=value" override to an existing config.
void apply_override(Config& cfg, const std::string& key, const std::string& value,
                    int line = 0);

}  // namespace fsibench
