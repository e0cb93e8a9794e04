#include "vwl/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace vwl;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

GridPtr small() { return GridSpec::make(50.0, 1024); }

double l2_diff(const WaveState& a, const WaveState& b) { return std::hypot((a.W - b.W).l2_norm(), (a.U - b.U).l2_norm()); }

WaveState rk4_steps(WaveState s, double dt, int n) {
    for (int i = 0; i < n; ++i) s = step_rk4(s, dt);
    return s;
}

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.grid_half_length = 50.0;
    c.grid_n = 1024;
    c.x0 = 1.0;
    c.y0 = -6.0;
    c.lambda = 0.0;
    c.dt = 0.01;
    c.t_end = 0.05;
    return c;
}

std::size_t count_fields(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

}  // namespace

TEST_CASE("initial states") {
    const auto g = GridSpec::make(200.0, 1 << 14);
    const PairConfig pair{1.0, -6.0, 20.0};
    const auto s = make_initial(InitialKind::zero_wave, 0.0, pair, g);
    CHECK(s.W.max_abs() == 0.0);
    REQUIRE(s.vortices.size() == 2);
    CHECK(s.vortices[0].position == cplx(-1.0, -6.0));
    CHECK(s.vortices[1].strength == -20.0);
    // Nearest grid point sits above the vortex, not at alpha = 0.
    CHECK(assemble(s).d_I == doctest::Approx(6.0).epsilon(1e-3));
    CHECK(std::abs(cplx(0.0, 0.0) - s.vortices[1].position) == doctest::Approx(std::sqrt(37.0)));

    const auto z = make_initial(InitialKind::odd_bump, 0.0, pair, g);
    CHECK(z.W.max_abs() == 0.0);
    CHECK(z.U.max_abs() == 0.0);

    const auto b1 = make_initial(InitialKind::odd_bump, 1e-3, pair, g);
    const auto b2 = make_initial(InitialKind::odd_bump, 2e-3, pair, g);
    CHECK(odd_defect(b1.W) == 0.0);
    CHECK(odd_defect(b1.U) == 0.0);
    const GevreyParams gp;
    const double n1 = gevrey_norm(b1.U, gp.L0, GevreyKind::Y).value + gevrey_norm(derivative(b1.W, 1), gp.L0, GevreyKind::X).value;
    const double n2 = gevrey_norm(b2.U, gp.L0, GevreyKind::Y).value + gevrey_norm(derivative(b2.W, 1), gp.L0, GevreyKind::X).value;
    CHECK(std::isfinite(n1));
    CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-6));

    CHECK_THROWS(make_initial(InitialKind::odd_bump, -1.0, pair, g));
    CHECK_THROWS(make_initial(InitialKind::zero_wave, 0.0, PairConfig{1.0, 2.0, 1.0}, g));
}

TEST_CASE("rk4 stepping") {
    const auto g = small();
    const WaveState eq{Field::zeros(g), Field::zeros(g), {}, 0.0};
    const auto e1 = step_rk4(eq, 0.01);
    CHECK(e1.W.max_abs() == 0.0);
    CHECK(e1.U.max_abs() == 0.0);
    CHECK(e1.t == doctest::Approx(0.01));

    const auto s = make_initial(InitialKind::zero_wave, 0.0, {1.0, -6.0, 4.0 * pi}, g);
    const double dt = 0.01;
    const auto s1 = step_rk4(s, dt);
    const double dy = s1.vortices[0].position.imag() - s.vortices[0].position.imag();
    CHECK(std::abs(dy / dt - 1.0) < 1e-2);
    CHECK(std::abs(s1.vortices[0].position.real() + 1.0) < 1e-3);

    // Richardson self-convergence against a dt/8 reference.
    const auto w = make_initial(InitialKind::odd_bump, 0.05, {1.0, -4.0, 10.0}, g);
    const double h = 0.04;
    const auto ref = rk4_steps(w, h / 8.0, 8);
    const double e_full = l2_diff(step_rk4(w, h), ref);
    const double e_half = l2_diff(rk4_steps(w, h / 2.0, 2), ref);
    const double order = std::log2(e_full / e_half);
    CHECK(order >= 3.8);
}

TEST_CASE("picard stepping") {
    const auto g = small();
    IntegratorConfig cfg;
    PicardInfo info;
    const WaveState eq{Field::zeros(g), Field::zeros(g), {}, 0.0};
    const auto e1 = step_picard(eq, 0.01, cfg, &info);
    CHECK(info.iterations == 1);
    CHECK(e1.W.max_abs() == 0.0);

    const auto s = make_initial(InitialKind::odd_bump, 0.01, {1.0, -6.0, 20.0}, g);
    const auto p = step_picard(s, 0.002, cfg, &info);
    REQUIRE(info.residuals.size() >= 2);
    for (std::size_t n = 2; n < info.residuals.size(); ++n) CHECK(info.residuals[n] < info.residuals[n - 1]);
    CHECK(l2_diff(p, step_rk4(s, 0.002)) < 1e-6);

    IntegratorConfig one = cfg;
    one.picard_max_iter = 1;
    try {
        step_picard(s, 0.002, one);
        FAIL("expected PicardError");
    } catch (const PicardError& e) {
        CHECK(e.residuals.size() == 1);
        CHECK(std::string(e.what()).find("did not converge") != std::string::npos);
    }
}

TEST_CASE("monitor") {
    const auto g = small();
    const auto m = monitor(WaveState{Field::zeros(g), Field::zeros(g), {}, 0.0});
    CHECK(m.E == 0.0);
    CHECK(m.chord_arc == doctest::Approx(1.0));
    CHECK(m.inf_A1 == 1.0);
    CHECK(m.phi == 10.0);
    for (bool f : m.as_flags) CHECK(f);

    auto s = make_initial(InitialKind::odd_bump, 1e-3, {1.0, -6.0, 20.0}, g);
    CHECK(symmetry_defect(s) == 0.0);
    s.vortices[0].position += 1e-3;
    CHECK(symmetry_defect(s) == doctest::Approx(1e-3));
    s.t = 0.02;
    CHECK(std::isnan(monitor(s).E));
}

TEST_CASE("records and exit codes") {
    CHECK(exit_code(ExitReason::completed) == 0);
    CHECK(exit_code(ExitReason::monitor_stop) == 2);
    CHECK(exit_code(ExitReason::error) == 1);
    CHECK(count_fields(csv_header()) == step_record_columns);

    StepRecord r{};
    r.t = 0.1;
    CHECK(count_fields(csv_row(r)) == step_record_columns);
    CHECK(csv_row(r).back() == ',');
    r.picard_iters = 3;
    CHECK(csv_row(r).back() == '3');
    r.t = 1.0 / 3.0;
    CHECK(csv_row(r).rfind("0.33333333333333331,", 0) == 0);
}

TEST_CASE("zero-strength run is constant") {
    auto c = small_config();
    std::ostringstream out;
    RunOptions opts;
    opts.trajectory = &out;
    const auto res = run(c, opts);
    CHECK(res.reason == ExitReason::completed);
    REQUIRE(res.records.size() == 6);
    for (const auto& r : res.records) {
        CHECK(r.inf_A1 == 1.0);
        CHECK(r.y1 == -6.0);
        CHECK(r.U_L2 == 0.0);
    }
    CHECK(res.records.back().t == doctest::Approx(0.05));

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == csv_header());
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(count_fields(line) == step_record_columns);
        ++rows;
    }
    CHECK(rows == 6);

    c.output_stride = 2;
    CHECK(run(c).records.size() == 4);
    RunOptions capped;
    capped.max_steps = 2;
    CHECK(run(c, capped).final_state.t == doctest::Approx(0.02));
}

TEST_CASE("run stops and fails as configured") {
    auto c = small_config();
    c.lambda.reset();
    c.gamma = 8.0;
    c.y0 = -12.0;
    const auto stop = run(c);
    CHECK(stop.reason == ExitReason::monitor_stop);
    CHECK(stop.records.back().inf_A1 <= -c.eta1);

    auto big_dt = small_config();
    big_dt.lambda = 40.0;
    big_dt.dt = 1.0;
    big_dt.t_end = 2.0;
    const auto cfl = run(big_dt);
    CHECK(cfl.reason == ExitReason::error);
    CHECK(cfl.message.find("CFL") != std::string::npos);

    auto close = small_config();
    close.y0 = -0.5;
    close.lambda = 1.0;
    const auto prox = run(close);
    CHECK(prox.reason == ExitReason::error);
    CHECK(prox.records.empty());
}

TEST_CASE("vortex motion follows the sign of lambda") {
    const auto g = small();
    for (double lam : {20.0, -20.0}) {
        auto s = make_initial(InitialKind::odd_bump, 1e-3, {1.0, -6.0, lam}, g);
        for (int i = 0; i < 10; ++i) {
            const auto next = step_rk4(s, 0.005);
            const double dy = next.vortices[0].position.imag() - s.vortices[0].position.imag();
            CHECK(dy * lam > 0.0);
            s = next;
        }
        CHECK(symmetry_defect(s) < 1e-8);
    }
}

TEST_CASE("energy stays bounded on the radius schedule") {
    auto c = small_config();
    c.wave_kind = "odd_bump";
    c.wave_amplitude = 1e-3;
    c.lambda = 20.0;
    c.dt = 0.001;
    c.t_end = 0.005;
    const auto res = run(c);
    REQUIRE(res.reason == ExitReason::completed);
    const double e0 = res.records.front().E_gevrey;
    CHECK(std::isfinite(e0));
    for (const auto& r : res.records) CHECK(r.E_gevrey <= 2.0 * (e0 + 1.0));
}

TEST_CASE("time reversal") {
    const auto g = small();
    const auto s0 = make_initial(InitialKind::odd_bump, 1e-3, {1.0, -6.0, 20.0}, g);
    const auto f = rk4_steps(s0, 0.005, 10);
    const auto r = time_reversed(f);
    CHECK(r.vortices[0].strength == -20.0);
    CHECK((r.U + f.U).max_abs() == 0.0);
    const auto back = rk4_steps(r, 0.005, 10);
    CHECK(std::abs(back.vortices[0].position - s0.vortices[0].position) < 1e-6);
    CHECK((back.W - s0.W).max_abs() < 1e-6);
}

TEST_CASE("cfl limit") {
    const auto g = small();
    const auto d = assemble(WaveState{Field::zeros(g), Field::zeros(g), {}, 0.0});
    CHECK(cfl_limit(*g, d, 0.5) == doctest::Approx(0.5 / std::sqrt(g->k_max())));
}
