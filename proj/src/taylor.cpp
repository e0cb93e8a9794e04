#include "vwl/taylor.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vwl {

using std::numbers::pi;

void PairConfig::validate() const {
    if (!(x > 0.0)) throw std::invalid_argument("pair x must be positive");
    if (!(y < 0.0)) throw std::invalid_argument("pair y must be negative");
    if (!std::isfinite(lambda)) throw std::invalid_argument("pair lambda must be finite");
}

std::vector<Vortex> PairConfig::vortices() const {
    return {Vortex{{-x, y}, lambda}, Vortex{{x, y}, -lambda}};
}

double g1_term(double alpha, const PairConfig& c) {
    const double x2 = c.x * c.x, y2 = c.y * c.y, a2 = alpha * alpha, r2 = x2 + y2;
    const double num = 3.0 * c.y * a2 * a2 + r2 * c.y * (3.0 * x2 - y2 + 2.0 * a2);
    const double den = a2 * a2 + r2 * r2 + 2.0 * a2 * (y2 - x2);
    return c.lambda * c.lambda / (pi * pi) * num / (den * den);
}

double g2_term(double alpha, const PairConfig& c) {
    const double x2 = c.x * c.x, y2 = c.y * c.y, a2 = alpha * alpha;
    const double num = a2 * x2 + x2 * x2 + 5.0 * x2 * y2;
    const double den = ((alpha + c.x) * (alpha + c.x) + y2) * ((alpha - c.x) * (alpha - c.x) + y2) * (x2 + y2) *
                       std::abs(c.y);
    return c.lambda * c.lambda / (4.0 * pi * pi) * num / den;
}

double a1_flat_pair(double alpha, const PairConfig& cfg) { return 1.0 + g1_term(alpha, cfg) + g2_term(alpha, cfg); }

double g_profile(double k) {
    const double k2 = k * k;
    const double d = k2 + 1.0;
    return (3.0 * k2 * k2 + 2.0 * k2 - 1.0) / (d * d * d * d);
}

double f_reduced(double gamma, double k) {
    if (gamma < 0.0) throw std::invalid_argument("f_reduced: gamma must be non-negative");
    return 1.0 - gamma * g_profile(k);
}

InfResult inf_a1_flat(const PairConfig& cfg) {
    cfg.validate();
    if (cfg.lambda == 0.0) return {1.0, 0.0};
    // a1_flat_pair is even in alpha, so the scan covers 0 <= alpha <= window.
    const double window = 10.0 * (std::abs(cfg.y) + cfg.x);
    const double step = std::abs(cfg.y) / 200.0;
    double best = a1_flat_pair(0.0, cfg), at = 0.0;
    for (double a = step; a <= window; a += step) {
        const double v = a1_flat_pair(a, cfg);
        if (v < best) best = v, at = a;
    }
    double lo = std::max(0.0, at - step), hi = at + step;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    double fc = a1_flat_pair(c, cfg), fd = a1_flat_pair(d, cfg);
    while (hi - lo > 1e-10) {
        if (fc < fd) {
            hi = d, d = c, fd = fc;
            c = hi - r * (hi - lo);
            fc = a1_flat_pair(c, cfg);
        } else {
            lo = c, c = d, fc = fd;
            d = lo + r * (hi - lo);
            fd = a1_flat_pair(d, cfg);
        }
    }
    const double a = 0.5 * (lo + hi);
    const double v = a1_flat_pair(a, cfg);
    if (v < best) return {v, a};
    return {best, at};
}

double crossing_depth(double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("crossing_depth: lambda must be non-zero");
    return std::cbrt(lambda * lambda / (4.0 * pi * pi));
}

double gamma_of(double lambda, double y) { return lambda * lambda / (pi * pi * std::pow(std::abs(y), 3)); }

double lambda_of(double gamma, double y) { return pi * std::sqrt(gamma) * std::pow(std::abs(y), 1.5); }

StabilityProfile stability_profile(const PairConfig& cfg) {
    const auto inf = inf_a1_flat(cfg);
    StabilityProfile p;
    p.gamma = gamma_of(cfg.lambda, cfg.y);
    p.inf_value = inf.value;
    p.argmin_alpha = inf.argmin;
    p.crossing_depth = cfg.lambda == 0.0 ? 0.0 : crossing_depth(cfg.lambda);
    return p;
}

namespace {
void require_lower(cplx w, const char* name) {
    if (!(w.imag() < 0.0))
        throw std::invalid_argument(std::string("residue_pair_integral: ") + name + " must lie in the lower half-plane");
}
}  // namespace

cplx residue_pair_integral(cplx w1, cplx w2) {
    require_lower(w1, "w1");
    require_lower(w2, "w2");
    return cplx(0.0, 2.0 * pi) / (std::conj(w2) - w1);
}

cplx residue_pair_quadrature(cplx w1, cplx w2, double tol) {
    require_lower(w1, "w1");
    require_lower(w2, "w2");
    using boost::math::quadrature::gauss_kronrod;
    const double inf = std::numeric_limits<double>::infinity();
    auto integrand = [&](double b) { return 1.0 / ((b - w1) * (b - std::conj(w2))); };
    // Split at the pole abscissae so each piece is smooth and unimodal.
    const double a = std::min(w1.real(), w2.real()), c = std::max(w1.real(), w2.real());
    auto piece = [&](double lo, double hi) {
        const double re = gauss_kronrod<double, 61>::integrate(
            [&](double b) { return integrand(b).real(); }, lo, hi, 15, tol);
        const double im = gauss_kronrod<double, 61>::integrate(
            [&](double b) { return integrand(b).imag(); }, lo, hi, 15, tol);
        return cplx(re, im);
    };
    cplx s = piece(-inf, a) + piece(c, inf);
    if (c > a) s += piece(a, c);
    return s;
}

double interaction_sum(const std::vector<Vortex>& vortices, double alpha) {
    for (const auto& v : vortices)
        if (!(v.position.imag() < 0.0)) throw std::invalid_argument("interaction_sum: vortex on or above the line");
    cplx s = 0.0;
    for (const auto& j : vortices)
        for (const auto& k : vortices) {
            const cplx zj = j.position, zk = k.position;
            s += j.strength * k.strength / (4.0 * pi * pi) / ((alpha - zj) * std::conj(alpha - zk)) *
                 (cplx(0.0, 1.0) / (std::conj(zk) - zj));
        }
    return s.real();
}

Field interaction_sum(const std::vector<Vortex>& vortices, const GridPtr& grid) {
    return Field::sample_real(grid, [&](double a) { return interaction_sum(vortices, a); });
}

std::vector<SweepRow> sweep(double gamma_min, double gamma_max, int steps, double x, double y) {
    if (!(gamma_min < gamma_max)) throw std::invalid_argument("sweep: gamma_min must be below gamma_max");
    if (steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
    if (gamma_min < 0.0) throw std::invalid_argument("sweep: gamma must be non-negative");
    std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < steps; ++i) {
        const double g = gamma_min + (gamma_max - gamma_min) * i / (steps - 1);
        const PairConfig cfg{x, y, lambda_of(g, y)};
        const auto r = inf_a1_flat(cfg);
        rows[static_cast<std::size_t>(i)] = {g, x, y, cfg.lambda, r.value, r.argmin};
    }
    return rows;
}

}  // namespace vwl
