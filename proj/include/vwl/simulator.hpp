#pragma once

#include "vwl/config.hpp"
#include "vwl/fields.hpp"
#include "vwl/gevrey.hpp"
#include "vwl/taylor.hpp"

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vwl {

enum class Scheme { rk4, picard };

struct IntegratorConfig {
    double dt = 0.005;
    double t_end = 1.0;
    Scheme scheme = Scheme::rk4;
    double picard_tol = 1e-10;
    int picard_max_iter = 50;
    double cfl_safety = 0.5;
};

struct CflError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PicardError : std::runtime_error {
    PicardError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residuals(std::move(history)) {}
    std::vector<double> residuals;
};

enum class InitialKind { zero_wave, odd_bump };

WaveState make_initial(InitialKind kind, double amplitude, const PairConfig& pair, const GridPtr& grid);

// (W, U, lambda) -> (W, -U, -lambda): the time-reversed state.
WaveState time_reversed(const WaveState& s);

// Largest admissible step: safety * min(h / max|b|, 1 / sqrt(max|A| k_max)).
double cfl_limit(const GridSpec& grid, const DerivedFields& d, double safety);

WaveState step_rk4(const WaveState& s, double dt, const DerivedFields* at_start = nullptr);

struct PicardInfo {
    int iterations = 0;
    std::vector<double> residuals;
    std::vector<int> inner_iterations;
};
WaveState step_picard(const WaveState& s, double dt, const IntegratorConfig& cfg, PicardInfo* info = nullptr,
                      const DerivedFields* at_start = nullptr);

struct MonitorContext {
    GevreyParams gevrey;
    double chord_arc0 = 1.0;
    double d_I0 = 0.0;
    double x0 = 0.0;
    double as2_cap = 1.0;
    double u_inf_cap = 1.0;
};

struct MonitorReport {
    double E = 0.0;
    double chord_arc = 1.0;
    double d_I = 0.0;
    double phi = 0.0;
    double inf_A1 = 1.0;
    double argmin_alpha = 0.0;
    double U_L2 = 0.0;
    double U_inf = 0.0;
    double b_residual = 0.0;
    double symmetry_defect = 0.0;
    std::array<bool, 5> as_flags{};
};

// odd_defect(W) + odd_defect(U) + |x1 + x2| + |y1 - y2| (the last two for a pair only).
double symmetry_defect(const WaveState& s);

MonitorContext make_context(const WaveState& s, const DerivedFields& d, const GevreyParams& g);
MonitorReport monitor(const WaveState& s, const DerivedFields& d, const MonitorContext& ctx);
MonitorReport monitor(const WaveState& s);

struct StepRecord {
    double t, x1, y1, x2, y2, d_I, inf_A1, argmin_alpha, E_gevrey, phi, chord_arc, U_L2, U_inf, b_residual,
        symmetry_defect;
    std::optional<int> picard_iters;
};

constexpr int step_record_columns = 16;
std::string csv_header();
std::string csv_row(const StepRecord& r);
StepRecord make_record(const WaveState& s, const MonitorReport& m, std::optional<int> picard_iters);

enum class ExitReason { completed, monitor_stop, error };
int exit_code(ExitReason r);

struct RunResult {
    std::vector<StepRecord> records;
    ExitReason reason = ExitReason::completed;
    std::string message;
    WaveState final_state;
};

struct RunOptions {
    std::ostream* trajectory = nullptr;
    std::ostream* log = nullptr;
    // Stop after this many steps regardless of t_end (0: no limit).
    long max_steps = 0;
};

IntegratorConfig integrator_config(const ScenarioConfig& c);
WaveState initial_state(const ScenarioConfig& c);
RunResult run(const ScenarioConfig& config, const RunOptions& options = {});
RunResult run_from(const WaveState& start, const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace vwl
