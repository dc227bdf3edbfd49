#include "fsibench/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fsibench {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, const std::string& key, int line) {
    const std::string t = trim(v);
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw ConfigError("non-numeric value '" + t + "' for key '" + key + "'", line);
    return x;
}

int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_number(v, key, line);
    const int i = static_cast<int>(std::lround(x));
    if (std::abs(x - i) > 1e-12)
        throw ConfigError("expected an integer for key '" + key + "'", line);
    return i;
}

}  // namespace

void Config::validate() const {
    phys.validate();
    time.validate();
    coupling.validate();
    if (n_modes < 1) throw std::domain_error("n_modes must be >= 1");
    if (nx < 4 || ny < 4) throw std::domain_error("grid needs nx, ny >= 4");
    if (init_mode < 1) throw std::domain_error("init_mode must be >= 1");
    if (force_duration < 0.0) throw std::domain_error("force_duration must be >= 0");
}

void apply_override(Config& cfg, const std::string& key, const std::string& value,
                    int line) {
    const std::string v = trim(value);
    if (key == "rho_f") cfg.phys.rho_f = parse_number(v, key, line);
    else if (key == "rho_s") cfg.phys.rho_s = parse_number(v, key, line);
    else if (key == "h_s") cfg.phys.h_s = parse_number(v, key, line);
    else if (key == "beta") cfg.phys.beta = parse_number(v, key, line);
    else if (key == "L") cfg.phys.L = parse_number(v, key, line);
    else if (key == "R") cfg.phys.R = parse_number(v, key, line);
    else if (key == "dt") cfg.time.dt = parse_number(v, key, line);
    else if (key == "t_final") cfg.time.t_final = parse_number(v, key, line);
    else if (key == "alpha") cfg.coupling.alpha = AlphaStrategy::fixed(parse_number(v, key, line));
    else if (key == "alpha_strategy") {
        if (v == "fixed") cfg.coupling.alpha.kind = AlphaStrategy::Kind::Fixed;
        else if (v == "mr") cfg.coupling.alpha = AlphaStrategy::minimum_residual();
        else throw ConfigError("alpha_strategy must be 'fixed' or 'mr'", line);
    } else if (key == "tol") cfg.coupling.tol = parse_number(v, key, line);
    else if (key == "max_iter") cfg.coupling.max_iter = parse_int(v, key, line);
    else if (key == "scheme") {
        if (v == "monolithic") cfg.scheme = Scheme::Monolithic;
        else if (v == "sc") cfg.scheme = Scheme::ScDnAlpha;
        else if (v == "lc") cfg.scheme = Scheme::LcDnAlpha;
        else throw ConfigError("scheme must be 'monolithic', 'sc' or 'lc'", line);
    } else if (key == "level") {
        if (v == "modal") cfg.modal_level = true;
        else if (v == "grid") cfg.modal_level = false;
        else throw ConfigError("level must be 'modal' or 'grid'", line);
    } else if (key == "n_modes") cfg.n_modes = parse_int(v, key, line);
    else if (key == "nx") cfg.nx = parse_int(v, key, line);
    else if (key == "ny") cfg.ny = parse_int(v, key, line);
    else if (key == "init_amp") cfg.init_amp = parse_number(v, key, line);
    else if (key == "init_mode") cfg.init_mode = parse_int(v, key, line);
    else if (key == "force_amp") cfg.force_amp = parse_number(v, key, line);
    else if (key == "force_duration") cfg.force_duration = parse_number(v, key, line);
    else if (key == "out") cfg.out_path = v;
    else throw ConfigError("unknown key '" + key + "'", line);

    // surface violated invariants against the offending line right away
    try {
        cfg.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what(), line);
    }
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + trim(raw) + "'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line_no);
        try {
            apply_override(cfg, key, value, line_no);
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what(), line_no);
        }
    }
    try {
        cfg.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

Config parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace fsibench
