#include "vwl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace vwl {

namespace {

const double nan = std::numeric_limits<double>::quiet_NaN();

WaveState advance(const WaveState& s, double dt, const Rhs& k) {
    WaveState o{s.W + dt * k.dW, s.U + dt * k.dU, s.vortices, s.t + dt};
    for (std::size_t j = 0; j < o.vortices.size(); ++j) o.vortices[j].position += dt * k.dz[j];
    return o;
}

}  // namespace

WaveState make_initial(InitialKind kind, double amplitude, const PairConfig& pair, const GridPtr& grid) {
    if (amplitude < 0.0) throw std::invalid_argument("make_initial: amplitude must be non-negative");
    pair.validate();
    WaveState s;
    if (kind == InitialKind::odd_bump && amplitude > 0.0) {
        const auto bump = [amplitude](double a) { return amplitude * a * std::exp(-a * a / 4.0); };
        s.W = Field::sample_real(grid, bump);
        s.U = Field::sample_real(grid, bump);
    } else {
        s.W = Field::zeros(grid);
        s.U = Field::zeros(grid);
    }
    s.vortices = pair.vortices();
    const auto rec = reconstruct(s.W, s.U);
    check_vortex_clearance(rec.Z, s.vortices, 0.0);
    return s;
}

WaveState time_reversed(const WaveState& s) {
    WaveState o{s.W, -s.U, s.vortices, s.t};
    for (auto& v : o.vortices) v.strength = -v.strength;
    return o;
}

double cfl_limit(const GridSpec& grid, const DerivedFields& d, double safety) {
    const double bmax = d.b.max_abs();
    const double amax = d.A.max_abs();
    const double adv = bmax > 0.0 ? grid.spacing() / bmax : std::numeric_limits<double>::infinity();
    const double grav = amax > 0.0 ? 1.0 / std::sqrt(amax * grid.k_max()) : std::numeric_limits<double>::infinity();
    return safety * std::min(adv, grav);
}

WaveState step_rk4(const WaveState& s, double dt, const DerivedFields* at_start) {
    const Rhs k1 = at_start ? rhs(s, *at_start) : rhs(s);
    const Rhs k2 = rhs(advance(s, 0.5 * dt, k1));
    const Rhs k3 = rhs(advance(s, 0.5 * dt, k2));
    const Rhs k4 = rhs(advance(s, dt, k3));
    const double c = dt / 6.0;
    WaveState o{s.W + c * (k1.dW + 2.0 * k2.dW + 2.0 * k3.dW + k4.dW),
                s.U + c * (k1.dU + 2.0 * k2.dU + 2.0 * k3.dU + k4.dU), s.vortices, s.t + dt};
    for (std::size_t j = 0; j < o.vortices.size(); ++j)
        o.vortices[j].position += c * (k1.dz[j] + 2.0 * k2.dz[j] + 2.0 * k3.dz[j] + k4.dz[j]);
    o.W = spectral_filter(o.W);
    o.U = spectral_filter(o.U);
    return o;
}

namespace {

struct Frozen {
    Field A, G, R, b1;
};

Field transport_commutator(const Field& W, const Field& U) {
    const auto rec = reconstruct(W, U);
    const Field g = map(rec.Z_alpha, [](cplx z) { return 1.0 / z - 1.0; }, false);
    return commutator_spectral(rec.F.conj(), g).re();
}

// Transport-dispersive right-hand side with A, G, R, b1 frozen and b0 taken from (W, U).
std::pair<Field, Field> frozen_rhs(const Field& W, const Field& U, const Frozen& fz) {
    const Field comm0 = transport_commutator(W, U);
    const Field b = 2.0 * U + comm0 + fz.b1;
    const Field Wa = derivative(W, 1);
    const Field Ua = derivative(U, 1);
    const Field win = boundary_window(W.grid_ptr());
    Field dW = win * (-(b * Wa) - U - comm0 + fz.R);
    Field dU = win * (-(b * Ua) + fz.A * lambda_op(W) + fz.G);
    return {std::move(dW), std::move(dU)};
}

double h4_distance(const Field& a, const Field& b) { return sobolev_norm(a - b, 4); }

// Solves (W, U) = c + dt/2 N(W, U) by Richardson iteration preconditioned with
// the constant-coefficient gravity operator (W, U) -> (-U, Lambda W).
int inner_solve(Field& W, Field& U, const Field& cW, const Field& cU, const Frozen& fz, double dt, double tol) {
    const auto& grid = W.grid();
    const double half = 0.5 * dt;
    double previous = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < 200; ++it) {
        auto [nW, nU] = frozen_rhs(W, U, fz);
        const Field rW = cW + half * (nW + U);
        const Field rU = cU + half * (nU - lambda_op(W));
        const auto sW = rW.spectrum();
        const auto sU = rU.spectrum();
        std::vector<cplx> w(sW.size()), u(sU.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double k = std::abs(grid.wavenumber(i));
            w[i] = (sW[i] - half * sU[i]) / (1.0 + half * half * k);
            u[i] = sU[i] + half * k * w[i];
        }
        Field W1 = Field::from_spectrum(W.grid_ptr(), w, true);
        Field U1 = Field::from_spectrum(U.grid_ptr(), u, true);
        const double delta = h4_distance(W1, W) + h4_distance(U1, U);
        W = std::move(W1);
        U = std::move(U1);
        if (delta <= tol || delta >= 0.9 * previous) return it + 1;
        previous = delta;
    }
    return it;
}

}  // namespace

WaveState step_picard(const WaveState& s, double dt, const IntegratorConfig& cfg, PicardInfo* info,
                      const DerivedFields* at_start) {
    const DerivedFields d0 = at_start ? *at_start : assemble(s);
    const Rhs n0 = rhs(s, d0);
    const Field cW = s.W + 0.5 * dt * n0.dW;
    const Field cU = s.U + 0.5 * dt * n0.dU;
    const auto& grid = s.grid();

    WaveState cur = s;
    cur.t = s.t + dt;
    PicardInfo local;
    for (int n = 0; n < cfg.picard_max_iter; ++n) {
        const DerivedFields dn = n == 0 ? d0 : assemble(cur);
        const Frozen fz{dn.A, dn.G, dn.R, dn.b1};

        const double amplitude = std::max({cur.W.max_abs(), cur.U.max_abs(), cW.max_abs(), cU.max_abs()});
        const double floor = sobolev_noise_floor(*grid, 4, amplitude);

        WaveState next = cur;
        local.inner_iterations.push_back(inner_solve(next.W, next.U, cW, cU, fz, dt, std::max(floor, 1e-3 * cfg.picard_tol)));
        for (std::size_t j = 0; j < next.vortices.size(); ++j)
            next.vortices[j].position = s.vortices[j].position + 0.5 * dt * (d0.zdot[j] + dn.zdot[j]);

        double delta = h4_distance(next.W, cur.W) + h4_distance(next.U, cur.U);
        for (std::size_t j = 0; j < next.vortices.size(); ++j)
            delta += std::abs(next.vortices[j].position - cur.vortices[j].position);
        local.residuals.push_back(delta);
        local.iterations = n + 1;
        cur = std::move(next);
        if (delta <= std::max(cfg.picard_tol, floor)) {
            if (info) *info = local;
            cur.W = spectral_filter(cur.W);
            cur.U = spectral_filter(cur.U);
            return cur;
        }
    }
    if (info) *info = local;
    std::string hist;
    for (double r : local.residuals) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.3e", r);
        hist += buf;
    }
    throw PicardError("picard iteration did not converge in " + std::to_string(cfg.picard_max_iter) +
                          " iterations; residuals:" + hist,
                      local.residuals);
}

double symmetry_defect(const WaveState& s) {
    double d = odd_defect(s.W) + odd_defect(s.U);
    if (s.vortices.size() == 2) {
        const cplx a = s.vortices[0].position, b = s.vortices[1].position;
        d += std::abs(a.real() + b.real()) + std::abs(a.imag() - b.imag());
    }
    return d;
}

MonitorContext make_context(const WaveState& s, const DerivedFields& d, const GevreyParams& g) {
    MonitorContext c;
    c.gevrey = g;
    c.chord_arc0 = d.chord_arc;
    c.d_I0 = d.d_I;
    c.x0 = s.vortices.size() >= 2 ? 0.5 * std::abs(s.vortices[1].position.real() - s.vortices[0].position.real()) : 0.0;
    return c;
}

MonitorReport monitor(const WaveState& s, const DerivedFields& d, const MonitorContext& ctx) {
    MonitorReport m;
    m.chord_arc = d.chord_arc;
    m.d_I = d.d_I;
    m.inf_A1 = d.inf_A1;
    m.argmin_alpha = d.argmin_alpha;
    m.U_L2 = s.U.l2_norm();
    m.U_inf = s.U.max_abs();
    m.b_residual = d.b_residual;
    m.phi = ctx.gevrey.L0 - ctx.gevrey.delta0 * s.t;

    double u2 = nan, w2 = nan;
    if (m.phi > 0.0) {
        const double u = gevrey_norm(s.U, m.phi, GevreyKind::Ydot, ctx.gevrey).value;
        const double w = gevrey_norm(derivative(s.W, 1), m.phi, GevreyKind::X, ctx.gevrey).value;
        u2 = u * u, w2 = w * w;
    }
    m.E = 0.5 * (u2 + w2);

    m.symmetry_defect = symmetry_defect(s);

    m.as_flags[0] = std::isfinite(m.E) && std::isfinite(s.W.max_abs()) && std::isfinite(m.U_inf);
    m.as_flags[1] = std::isfinite(m.E) && u2 + w2 <= ctx.as2_cap && m.U_L2 * m.U_L2 <= 1.0 && m.U_inf <= ctx.u_inf_cap;
    m.as_flags[2] = m.chord_arc >= 0.5 * ctx.chord_arc0;
    bool as4 = true;
    if (!s.vortices.empty()) {
        const double floor = 0.5 * std::pow(ctx.d_I0, 0.9);
        as4 = m.d_I >= floor && floor >= 1.0;
        if (s.vortices.size() >= 2) {
            const double x = 0.5 * std::abs(s.vortices[1].position.real() - s.vortices[0].position.real());
            as4 = as4 && x >= 0.5 * ctx.x0;
        }
    }
    m.as_flags[3] = as4;
    m.as_flags[4] = m.phi >= 0.5 * ctx.gevrey.L0;
    return m;
}

MonitorReport monitor(const WaveState& s) {
    const auto d = assemble(s);
    return monitor(s, d, make_context(s, d, GevreyParams{}));
}

std::string csv_header() {
    return "t,x1,y1,x2,y2,d_I,inf_A1,argmin_alpha,E_gevrey,phi,chord_arc,U_L2,U_inf,b_residual,symmetry_defect,"
           "picard_iters";
}

std::string csv_row(const StepRecord& r) {
    const double v[] = {r.t,      r.x1,  r.y1,      r.x2,   r.y2,  r.d_I,        r.inf_A1,         r.argmin_alpha,
                        r.E_gevrey, r.phi, r.chord_arc, r.U_L2, r.U_inf, r.b_residual, r.symmetry_defect};
    std::string out;
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%.17g,", x);
        out += buf;
    }
    if (r.picard_iters) out += std::to_string(*r.picard_iters);
    return out;
}

StepRecord make_record(const WaveState& s, const MonitorReport& m, std::optional<int> picard_iters) {
    StepRecord r{};
    r.t = s.t;
    r.x1 = r.y1 = r.x2 = r.y2 = nan;
    if (!s.vortices.empty()) r.x1 = s.vortices[0].position.real(), r.y1 = s.vortices[0].position.imag();
    if (s.vortices.size() > 1) r.x2 = s.vortices[1].position.real(), r.y2 = s.vortices[1].position.imag();
    r.d_I = m.d_I;
    r.inf_A1 = m.inf_A1;
    r.argmin_alpha = m.argmin_alpha;
    r.E_gevrey = m.E;
    r.phi = m.phi;
    r.chord_arc = m.chord_arc;
    r.U_L2 = m.U_L2;
    r.U_inf = m.U_inf;
    r.b_residual = m.b_residual;
    r.symmetry_defect = m.symmetry_defect;
    r.picard_iters = picard_iters;
    return r;
}

int exit_code(ExitReason r) {
    switch (r) {
        case ExitReason::completed: return 0;
        case ExitReason::monitor_stop: return 2;
        case ExitReason::error: return 1;
    }
    return 1;
}

IntegratorConfig integrator_config(const ScenarioConfig& c) {
    IntegratorConfig i;
    i.dt = c.dt;
    i.t_end = c.t_end;
    i.scheme = c.scheme == "picard" ? Scheme::picard : Scheme::rk4;
    i.picard_tol = c.picard_tol;
    i.picard_max_iter = static_cast<int>(c.picard_max_iter);
    i.cfl_safety = c.cfl_safety;
    return i;
}

WaveState initial_state(const ScenarioConfig& c) {
    c.validate();
    const auto grid = GridSpec::make(c.grid_half_length, static_cast<std::size_t>(c.grid_n));
    const PairConfig pair{c.x0, c.y0, c.resolved_lambda()};
    const auto kind = c.wave_kind == "odd_bump" ? InitialKind::odd_bump : InitialKind::zero_wave;
    return make_initial(kind, c.wave_amplitude, pair, grid);
}

RunResult run(const ScenarioConfig& config, const RunOptions& options) {
    return run_from(initial_state(config), config, options);
}

RunResult run_from(const WaveState& start, const ScenarioConfig& config, const RunOptions& options) {
    config.validate();
    const auto icfg = integrator_config(config);
    GevreyParams gp;
    gp.L0 = config.L0;
    gp.delta0 = config.delta0;

    RunResult res;
    WaveState s = start;
    if (options.trajectory) *options.trajectory << csv_header() << '\n' << std::flush;
    auto emit = [&](const StepRecord& r) {
        res.records.push_back(r);
        if (options.trajectory) *options.trajectory << csv_row(r) << '\n' << std::flush;
    };

    try {
        DerivedFields d = assemble(s);
        check_vortex_clearance(d.Z, s.vortices, 8.0);
        MonitorContext ctx = make_context(s, d, gp);
        ctx.as2_cap = config.as2_cap;
        ctx.u_inf_cap = config.u_inf_cap;
        const double t_stop = start.t + icfg.t_end;
        const double t_eps = 1e-12 * std::max(1.0, std::abs(t_stop));
        std::optional<int> iters;
        long step = 0;
        while (true) {
            const auto m = monitor(s, d, ctx);
            const bool stop = m.inf_A1 <= -config.eta1;
            const bool done = s.t >= t_stop - t_eps || (options.max_steps > 0 && step >= options.max_steps);
            if (step % config.output_stride == 0 || stop || done) emit(make_record(s, m, iters));
            if (options.log && step % config.output_stride == 0) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "t=%.5f y=%.5f inf_A1=%.6f d_I=%.4f\n", s.t,
                              s.vortices.empty() ? 0.0 : s.vortices[0].position.imag(), m.inf_A1, m.d_I);
                *options.log << buf << std::flush;
            }
            if (stop) {
                res.reason = ExitReason::monitor_stop;
                res.message = "inf A1 reached -eta1";
                break;
            }
            if (done) {
                res.reason = ExitReason::completed;
                break;
            }
            const double dt = std::min(icfg.dt, t_stop - s.t);
            const double limit = cfl_limit(*s.grid(), d, icfg.cfl_safety);
            if (dt > limit * (1.0 + 1e-12))
                throw CflError("CFL violation: dt = " + std::to_string(dt) + " exceeds limit " + std::to_string(limit));
            if (icfg.scheme == Scheme::rk4) {
                s = step_rk4(s, dt, &d);
            } else {
                PicardInfo info;
                s = step_picard(s, dt, icfg, &info, &d);
                iters = info.iterations;
            }
            ++step;
            d = assemble(s);
            check_vortex_clearance(d.Z, s.vortices, 8.0);
        }
    } catch (const std::exception& e) {
        res.reason = ExitReason::error;
        res.message = e.what();
    }
    res.final_state = s;
    return res;
}

}  // namespace vwl
