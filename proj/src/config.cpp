#include "vwl/config.hpp"

#include "vwl/taylor.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace vwl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("config key '" + key + "': trailing characters in '" + v + "'");
    if (!std::isfinite(d)) throw ConfigError("config key '" + key + "': value must be finite");
    return d;
}

long to_long(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<long>(d);
}

struct Key {
    const char* name;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <class M>
Key dbl(const char* name, M ScenarioConfig::*m) {
    return {name, [name, m](ScenarioConfig& c, const std::string& v) { c.*m = to_double(name, v); },
            [m](const ScenarioConfig& c) { return fmt_double(c.*m); }};
}

Key lng(const char* name, long ScenarioConfig::*m) {
    return {name, [name, m](ScenarioConfig& c, const std::string& v) { c.*m = to_long(name, v); },
            [m](const ScenarioConfig& c) { return std::to_string(c.*m); }};
}

Key str(const char* name, std::string ScenarioConfig::*m) {
    return {name, [m](ScenarioConfig& c, const std::string& v) { c.*m = v; },
            [m](const ScenarioConfig& c) { return c.*m; }};
}

Key opt(const char* name, std::optional<double> ScenarioConfig::*m) {
    return {name, [name, m](ScenarioConfig& c, const std::string& v) { c.*m = to_double(name, v); },
            [m](const ScenarioConfig& c) { return (c.*m) ? fmt_double(*(c.*m)) : std::string(); }};
}

const std::vector<Key>& keys() {
    static const std::vector<Key> k = {
        dbl("grid.half_length", &ScenarioConfig::grid_half_length),
        lng("grid.n", &ScenarioConfig::grid_n),
        dbl("vortex.x0", &ScenarioConfig::x0),
        dbl("vortex.y0", &ScenarioConfig::y0),
        opt("vortex.gamma", &ScenarioConfig::gamma),
        opt("vortex.lambda", &ScenarioConfig::lambda),
        str("wave.kind", &ScenarioConfig::wave_kind),
        dbl("wave.amplitude", &ScenarioConfig::wave_amplitude),
        dbl("gevrey.L0", &ScenarioConfig::L0),
        dbl("gevrey.delta0", &ScenarioConfig::delta0),
        dbl("time.dt", &ScenarioConfig::dt),
        dbl("time.t_end", &ScenarioConfig::t_end),
        str("time.scheme", &ScenarioConfig::scheme),
        dbl("time.picard_tol", &ScenarioConfig::picard_tol),
        lng("time.picard_max_iter", &ScenarioConfig::picard_max_iter),
        dbl("time.cfl_safety", &ScenarioConfig::cfl_safety),
        str("output.path", &ScenarioConfig::output_path),
        lng("output.stride", &ScenarioConfig::output_stride),
        dbl("monitor.eta1", &ScenarioConfig::eta1),
        dbl("monitor.as2_cap", &ScenarioConfig::as2_cap),
        dbl("monitor.u_inf_cap", &ScenarioConfig::u_inf_cap),
    };
    return k;
}

const Key* find_key(const std::string& name) {
    for (const auto& k : keys())
        if (name == k.name) return &k;
    return nullptr;
}

}  // namespace

double ScenarioConfig::resolved_lambda() const {
    if (lambda) return *lambda;
    if (gamma) return lambda_of(*gamma, y0);
    throw ConfigError("config: one of vortex.gamma or vortex.lambda is required");
}

void ScenarioConfig::validate() const {
    if (gamma && lambda) throw ConfigError("config: vortex.gamma and vortex.lambda are mutually exclusive");
    if (!gamma && !lambda) throw ConfigError("config: one of vortex.gamma or vortex.lambda is required");
    if (gamma && *gamma < 0.0) throw ConfigError("config key 'vortex.gamma': must be non-negative");
    if (!(grid_half_length > 0.0)) throw ConfigError("config key 'grid.half_length': must be positive");
    if (grid_n < 16 || !std::has_single_bit(static_cast<unsigned long>(grid_n)))
        throw ConfigError("config key 'grid.n': must be a power of two >= 16");
    if (!(x0 > 0.0)) throw ConfigError("config key 'vortex.x0': must be positive");
    if (!(y0 < 0.0)) throw ConfigError("config key 'vortex.y0': must be negative");
    if (wave_kind != "zero_wave" && wave_kind != "odd_bump")
        throw ConfigError("config key 'wave.kind': expected zero_wave or odd_bump, got '" + wave_kind + "'");
    if (wave_amplitude < 0.0) throw ConfigError("config key 'wave.amplitude': must be non-negative");
    if (!(L0 >= 4.0)) throw ConfigError("config key 'gevrey.L0': must be >= 4");
    if (!(delta0 > 0.0)) throw ConfigError("config key 'gevrey.delta0': must be positive");
    if (!(dt > 0.0)) throw ConfigError("config key 'time.dt': must be positive");
    if (!(t_end > 0.0)) throw ConfigError("config key 'time.t_end': must be positive");
    if (scheme != "rk4" && scheme != "picard")
        throw ConfigError("config key 'time.scheme': expected rk4 or picard, got '" + scheme + "'");
    if (!(picard_tol > 0.0)) throw ConfigError("config key 'time.picard_tol': must be positive");
    if (picard_max_iter < 1) throw ConfigError("config key 'time.picard_max_iter': must be >= 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("config key 'time.cfl_safety': must be in (0, 1]");
    if (output_stride < 1) throw ConfigError("config key 'output.stride': must be >= 1");
    if (eta1 < 0.0) throw ConfigError("config key 'monitor.eta1': must be non-negative");
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const Key* k = find_key(key);
        if (!k) throw ConfigError("config key '" + key + "': unknown key");
        if (c.present.count(key)) throw ConfigError("config key '" + key + "': duplicate key");
        if (value.empty()) throw ConfigError("config key '" + key + "': missing value");
        k->set(c, value);
        c.present.insert(key);
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& k : keys())
        if (cfg.present.count(k.name)) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
    return out;
}

std::string serialize_config_full(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& k : keys()) {
        const auto v = k.get(cfg);
        if (!v.empty()) out += std::string(k.name) + " = " + v + "\n";
    }
    return out;
}

}  // namespace vwl
