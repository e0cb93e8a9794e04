#include "vwl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace vwl {

using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

Field alpha_field(const GridPtr& grid) {
    return Field::sample(grid, [](double a) { return cplx(a, 0.0); }, true);
}
}  // namespace

Reconstruction reconstruct(const Field& W, const Field& U) {
    if (!W.is_real() || !U.is_real()) throw std::invalid_argument("reconstruct: W and U must be real fields");
    require_same_grid(W, U);
    Field Z = alpha_field(W.grid_ptr()) + plus_hilbert(W);
    Field F = plus_hilbert(U);
    Field Za = derivative(plus_hilbert(W), 1) + cplx(1.0, 0.0);
    return {std::move(Z), std::move(F), std::move(Za)};
}

double interface_distance(const Field& Z, const std::vector<Vortex>& vortices) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& v : vortices)
        for (const auto& p : Z.samples()) d = std::min(d, std::abs(p - v.position));
    return d;
}

void check_vortex_clearance(const Field& Z, const std::vector<Vortex>& vortices, double spacings) {
    if (vortices.empty()) return;
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& p : Z.samples()) lowest = std::min(lowest, p.imag());
    for (std::size_t j = 0; j < vortices.size(); ++j)
        if (!(vortices[j].position.imag() < lowest))
            throw ProximityError("vortex " + std::to_string(j) + " is not below the interface");
    const double d = interface_distance(Z, vortices);
    if (d < spacings * Z.grid().spacing())
        throw ProximityError("vortex too close to interface: d_I = " + std::to_string(d) + " < " +
                             std::to_string(spacings) + " grid spacings");
}

Field compute_Q(const Field& Z, const std::vector<Vortex>& vortices) {
    check_vortex_clearance(Z, vortices, 4.0);
    std::vector<cplx> q(Z.size());
    const auto z = Z.samples();
    for (const auto& v : vortices) {
        const cplx c = -v.strength * I / (2.0 * pi);
        for (std::size_t j = 0; j < q.size(); ++j) q[j] += c / (z[j] - v.position);
    }
    return Field(Z.grid_ptr(), std::move(q), false);
}

Field flat_pole_part(const GridPtr& grid, const std::vector<Vortex>& vortices) {
    std::vector<cplx> q(grid->size());
    for (const auto& v : vortices) {
        const cplx c = v.strength * I / (2.0 * pi);
        const cplx zc = std::conj(v.position);
        for (std::size_t j = 0; j < q.size(); ++j) q[j] += c / (grid->alpha(j) - zc);
    }
    return Field(grid, std::move(q), false);
}

cplx vortex_velocity(const WaveState& state, const DerivedFields& d, std::size_t j) {
    const auto& vs = state.vortices;
    if (j >= vs.size()) throw std::out_of_range("vortex_velocity: index out of range");
    cplx v = 0.0;
    if (d.F.max_abs() > 0.0) v = std::conj(cauchy_velocity(d.Z, d.Z_alpha, d.F, vs[j].position));
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k == j) continue;
        v += vs[k].strength * I / (2.0 * pi) / std::conj(vs[j].position - vs[k].position);
    }
    return v;
}

Field compute_DtQ(const WaveState& state, const DerivedFields& d) {
    const auto& vs = state.vortices;
    std::vector<cplx> out(d.Z.size());
    const auto z = d.Z.samples();
    const auto dtz = d.DtZ.samples();
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const cplx c = vs[k].strength * I / (2.0 * pi);
        const cplx zk = vs[k].position, vk = d.zdot.at(k);
        for (std::size_t j = 0; j < out.size(); ++j) {
            const cplx r = z[j] - zk;
            out[j] += c * (dtz[j] - vk) / (r * r);
        }
    }
    return Field(d.Z.grid_ptr(), std::move(out), false);
}

namespace {

Field inverse_minus_one(const Field& Za) {
    return map(Za, [](cplx z) { return 1.0 / z - 1.0; }, false);
}

}  // namespace

BParts compute_b(const WaveState& state, const DerivedFields& d) {
    const auto& grid = state.grid();
    const Field g = inverse_minus_one(d.Z_alpha);
    const Field Fbar = d.F.conj();
    const Field Qbar = d.Q.conj();
    // (I - H) annihilates the flat pole part exactly; only the remainder goes through the transform.
    const Field Qrem = Qbar - flat_pole_part(grid, state.vortices);

    const Field comm0 = commutator_spectral(Fbar, g).re();
    const Field comm = commutator_spectral(d.DtZ, g).re();
    const Field twoU = 2.0 * state.U;

    BParts out;
    out.transport_commutator = comm0;
    out.b0 = twoU + comm0;
    out.b = comm + minus_hilbert(Qrem).re() + twoU;
    out.b1 = out.b - out.b0;

    const Field X = out.b - d.DtZ * g - Qrem - Fbar;
    out.residual = positive_frequency_part(X).l2_norm();
    return out;
}

std::pair<double, double> refined_minimum(const Field& f) {
    const auto s = f.samples();
    const auto& grid = f.grid();
    std::size_t m = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
        if (s[j].real() < s[m].real()) m = j;
    double value = s[m].real(), at = grid.alpha(m);
    if (m > 0 && m + 1 < s.size()) {
        const double fm = s[m - 1].real(), f0 = s[m].real(), fp = s[m + 1].real();
        const double curv = fm - 2.0 * f0 + fp;
        if (curv > 0.0) {
            const double shift = 0.5 * (fm - fp) / curv;
            at += shift * grid.spacing();
            value = f0 - 0.25 * (fm - fp) * shift;
        }
    }
    return {value, at};
}

A1Result compute_A1(const WaveState& state, const DerivedFields& d, Kernel kernel) {
    const auto& grid = state.grid();
    const Field sq = sq_diff_integral(d.DtZ, kernel);
    std::vector<cplx> pair(grid->size());
    const auto z = d.Z.samples();
    const auto za = d.Z_alpha.samples();
    const auto dtz = d.DtZ.samples();
    for (std::size_t k = 0; k < state.vortices.size(); ++k) {
        const auto& v = state.vortices[k];
        // (I - H)[Z_alpha / (Z - z_k)^2] = 2/(alpha - z_k)^2 + (I - H)[remainder].
        std::vector<cplx> rem(grid->size()), pole(grid->size());
        for (std::size_t j = 0; j < rem.size(); ++j) {
            const cplx r = z[j] - v.position;
            const cplx f = grid->alpha(j) - v.position;
            pole[j] = 1.0 / (f * f);
            rem[j] = za[j] / (r * r) - pole[j];
        }
        const Field M = minus_hilbert(Field(grid, std::move(rem), false));
        const double c = v.strength / (2.0 * pi);
        const cplx vk = d.zdot.at(k);
        for (std::size_t j = 0; j < pair.size(); ++j) pair[j] += c * ((2.0 * pole[j] + M[j]) * (dtz[j] - vk)).real();
    }
    std::vector<cplx> a1(grid->size());
    for (std::size_t j = 0; j < a1.size(); ++j) a1[j] = 1.0 + sq[j].real() - pair[j].real();
    A1Result out{Field(grid, std::move(a1), true), 0.0, 0.0};
    std::tie(out.inf, out.argmin) = refined_minimum(out.A1);
    return out;
}

GR compute_G_R(const WaveState& state, const DerivedFields& d) {
    (void)state;
    return {(-d.DtQ).re(), d.Q.re() - d.b1};
}

double chord_arc_constant(const Field& Z, const Field& Z_alpha) {
    const auto& grid = Z.grid();
    const std::size_t n = grid.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 512);
    const auto z = Z.samples();
    double c = std::numeric_limits<double>::infinity();
    for (const auto& v : Z_alpha.samples()) c = std::min(c, std::abs(v));
    const long m = static_cast<long>(n / stride);
#pragma omp parallel for reduction(min : c) schedule(dynamic, 16)
    for (long a = 0; a < m; ++a)
        for (long b = a + 1; b < m; ++b) {
            const std::size_t i = a * stride, j = b * stride;
            c = std::min(c, std::abs(z[i] - z[j]) / (grid.alpha(j) - grid.alpha(i)));
        }
    return c;
}

DerivedFields assemble(const WaveState& state) {
    DerivedFields d;
    auto rec = reconstruct(state.W, state.U);
    d.Z = std::move(rec.Z);
    d.F = std::move(rec.F);
    d.Z_alpha = std::move(rec.Z_alpha);
    d.d_I = interface_distance(d.Z, state.vortices);
    d.Q = state.vortices.empty() ? Field::zeros(state.grid(), false) : compute_Q(d.Z, state.vortices);
    d.DtZ = d.F.conj() + d.Q.conj();
    d.zdot.resize(state.vortices.size());
    for (std::size_t j = 0; j < state.vortices.size(); ++j) d.zdot[j] = vortex_velocity(state, d, j);
    d.DtQ = compute_DtQ(state, d);

    auto bp = compute_b(state, d);
    d.b = std::move(bp.b);
    d.b0 = std::move(bp.b0);
    d.b1 = std::move(bp.b1);
    d.transport_commutator = std::move(bp.transport_commutator);
    d.b_residual = bp.residual;

    auto a1 = compute_A1(state, d);
    d.A1 = std::move(a1.A1);
    d.inf_A1 = a1.inf;
    d.argmin_alpha = a1.argmin;
    d.A = map2(d.A1, d.Z_alpha, [](cplx a, cplx za) { return a / std::norm(za); }, true);

    auto gr = compute_G_R(state, d);
    d.G = std::move(gr.G);
    d.R = std::move(gr.R);
    d.chord_arc = chord_arc_constant(d.Z, d.Z_alpha);
    return d;
}

Field boundary_window(const GridPtr& grid) {
    static std::mutex mu;
    static std::vector<std::pair<GridPtr, Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [g, w] : cache)
        if (*g == *grid) return w;
    const double L = grid->half_length();
    const double a = 0.75 * L;
    std::vector<cplx> v(grid->size());
    for (std::size_t j = 1; j < v.size(); ++j) {
        const double r = std::abs(grid->alpha(j));
        if (r <= a) {
            v[j] = 1.0;
            continue;
        }
        const double x = (r - a) / (L - a);
        const double p = std::exp(-1.0 / (1.0 - x)), q = x > 0.0 ? std::exp(-1.0 / x) : 0.0;
        v[j] = p / (p + q);
    }
    Field w(grid, std::move(v), true);
    cache.emplace_back(grid, w);
    return w;
}

Rhs rhs(const WaveState& state, const DerivedFields& d) {
    const Field win = boundary_window(state.grid());
    const Field Wa = derivative(state.W, 1);
    const Field Ua = derivative(state.U, 1);
    const Field LW = lambda_op(state.W);
    Rhs r;
    r.dU = win * (-(d.b * Ua) + d.A * LW + d.G);
    r.dW = win * (-(d.b * Wa) - state.U - d.transport_commutator + d.R);
    r.dz = d.zdot;
    return r;
}

Rhs rhs(const WaveState& state) { return rhs(state, assemble(state)); }

}  // namespace vwl
