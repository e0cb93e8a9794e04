#include "vwl/acceptance.hpp"
#include "vwl/simulator.hpp"
#include "vwl/taylor.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

void apply_thread_cap() {
    if (const char* v = std::getenv("VWL_THREADS")) {
        const int n = std::atoi(v);
        if (n > 0) omp_set_num_threads(n);
    }
}

int cmd_run(const std::string& path, bool quiet) {
    vwl::ScenarioConfig cfg;
    try {
        cfg = vwl::load_config(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::ofstream file;
    vwl::RunOptions opts;
    if (cfg.output_path.empty()) {
        opts.trajectory = &std::cout;
    } else {
        file.open(cfg.output_path);
        if (!file) {
            std::cerr << "error: cannot write trajectory file '" << cfg.output_path << "'\n";
            return 1;
        }
        opts.trajectory = &file;
    }
    if (!quiet) opts.log = &std::cerr;
    const auto res = vwl::run(cfg, opts);
    const int code = vwl::exit_code(res.reason);
    switch (res.reason) {
        case vwl::ExitReason::completed:
            std::cerr << "completed: t = " << res.final_state.t << ", " << res.records.size() << " records\n";
            break;
        case vwl::ExitReason::monitor_stop:
            std::cerr << "stopped: " << res.message << " at t = " << res.final_state.t
                      << " (inf A1 = " << res.records.back().inf_A1 << ")\n";
            break;
        case vwl::ExitReason::error:
            std::cerr << "error: " << res.message << " at t = " << res.final_state.t << "\n";
            break;
    }
    return code;
}

int cmd_sweep(double gmin, double gmax, int steps, double x, double y, const std::string& out) {
    std::vector<vwl::SweepRow> rows;
    try {
        rows = vwl::sweep(gmin, gmax, steps, x, y);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) {
            std::cerr << "error: cannot write '" << out << "'\n";
            return 1;
        }
        os = &file;
    }
    *os << "gamma,x,y,lambda,inf_A1,argmin_alpha\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.gamma, r.x, r.y, r.lambda, r.inf_A1,
                      r.argmin_alpha);
        *os << buf;
    }
    return 0;
}

int cmd_verify(bool mutate, bool supplementary, const std::vector<int>& only) {
    if (mutate) vwl::testing::set_hilbert_sign(-1.0);
    vwl::acceptance::Options opts;
    opts.supplementary = supplementary;
    opts.only.insert(only.begin(), only.end());
    const auto rep = vwl::acceptance::run_all(opts);
    std::cout << vwl::acceptance::format_table(rep);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"vortex water-wave laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "integrate a scenario config and write its trajectory CSV");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_flag("-q,--quiet", quiet, "no progress log on stderr");

    double gmin = 0, gmax = 0, x = 1.0, y = -10.0;
    int steps = 0;
    std::string out;
    auto* sw = app.add_subcommand("sweep", "inf A1 of the flat pair profile over a gamma range");
    sw->add_option("--gamma-min", gmin)->required();
    sw->add_option("--gamma-max", gmax)->required();
    sw->add_option("--steps", steps)->required();
    sw->add_option("--x", x)->capture_default_str();
    sw->add_option("--y", y)->capture_default_str();
    sw->add_option("--out", out, "output CSV (stdout when omitted)");

    bool mutate = false, no_extra = false;
    auto* ver = app.add_subcommand("verify", "run the acceptance suite and print a table");
    ver->add_flag("--mutate-hilbert", mutate)->group("");
    std::vector<int> only;
    ver->add_flag("--no-supplementary", no_extra, "skip the non-gating runs");
    ver->add_option("--only", only, "criterion ids to run (default: all)")->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(config_path, quiet);
        if (*sw) return cmd_sweep(gmin, gmax, steps, x, y, out);
        if (*ver) return cmd_verify(mutate, !no_extra, only);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
