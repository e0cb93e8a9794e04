#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace vwl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` document with `#` comments.
struct ScenarioConfig {
    double grid_half_length = 200.0;
    long grid_n = 16384;

    double x0 = 1.0;
    double y0 = -12.0;
    std::optional<double> gamma;
    std::optional<double> lambda;

    std::string wave_kind = "zero_wave";
    double wave_amplitude = 0.0;

    double L0 = 10.0;
    double delta0 = 1000.0;

    double dt = 0.005;
    double t_end = 1.0;
    std::string scheme = "rk4";
    double picard_tol = 1e-10;
    long picard_max_iter = 50;
    double cfl_safety = 0.5;

    std::string output_path;
    long output_stride = 1;

    double eta1 = 0.5;
    double as2_cap = 1.0;
    double u_inf_cap = 1.0;

    // Keys that appeared in the parsed document; serialization writes these only.
    std::set<std::string> present;

    double resolved_lambda() const;
    void validate() const;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);
// Every key, defaults included.
std::string serialize_config_full(const ScenarioConfig& cfg);

}  // namespace vwl
