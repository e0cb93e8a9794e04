#include "vwl/gevrey.hpp"

#include "vwl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vwl {

void GevreyParams::validate() const {
    if (!(L0 >= 4.0)) throw std::invalid_argument("gevrey.L0 must be >= 4");
    if (!(delta0 > 0.0)) throw std::invalid_argument("gevrey.delta0 must be positive");
    if (n_max < 5) throw std::invalid_argument("gevrey.n_max must be >= 5");
    if (!(tail_tol >= 0.0)) throw std::invalid_argument("gevrey.tail_tol must be non-negative");
}

void to_json(nlohmann::json& j, const GevreyReport& r) {
    j = nlohmann::json{{"value", r.value}, {"truncated_at", r.truncated_at}, {"roundoff_flag", r.roundoff_flag}};
}

std::vector<double> resolved_power_spectrum(const Field& f) {
    const auto spec = f.spectrum();
    const auto& grid = f.grid();
    const std::size_t n = spec.size();
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) power[i] = std::abs(spec[i]);

    // Noise plateau: median and peak magnitude over the upper quarter of |k|.
    std::vector<double> top;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(grid.wavenumber(i)) >= 0.75 * grid.k_max()) top.push_back(power[i]);
    double plateau = 0.0, peak = 0.0;
    if (!top.empty()) {
        peak = *std::max_element(top.begin(), top.end());
        std::nth_element(top.begin(), top.begin() + top.size() / 2, top.end());
        plateau = top[top.size() / 2];
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor =
        std::max({256.0 * eps * std::sqrt(grid.spacing()) * f.l2_norm(), 10.0 * plateau, 2.0 * peak});

    // Resolved band: wavenumbers below the first |k| whose +-k pair reaches the floor.
    // Past a gap only coefficients well clear of round-off count (trig polynomials).
    const std::size_t half = n / 2;
    double top_power = 0.0;
    for (double p : power) top_power = std::max(top_power, p);
    const double strong = std::sqrt(eps) * top_power;
    std::size_t cutoff = half + 1;
    for (std::size_t m = 1; m <= half; ++m) {
        const double pair = std::max(power[m], power[(n - m) % n]);
        if (pair <= floor) {
            cutoff = m;
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = std::min(i, n - i);
        const bool keep = power[i] > floor && (m < cutoff || power[i] >= strong);
        power[i] = keep ? power[i] * power[i] : 0.0;
    }
    return power;
}

GevreyReport gevrey_norm(const Field& f, double sigma, GevreyKind kind, const GevreyParams& params) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gevrey_norm: sigma must be positive");
    params.validate();
    const auto& grid = f.grid();
    const auto power = resolved_power_spectrum(f);
    const double inv_len = 1.0 / (2.0 * grid.half_length());

    double l2 = 0.0;
    for (double p : power) l2 += p;
    l2 *= inv_len;

    const int first = (kind == GevreyKind::X || kind == GevreyKind::Y) ? 0 : 1;
    const bool squared_index = kind == GevreyKind::Y || kind == GevreyKind::Ydot;

    GevreyReport r;
    double sum = 0.0;
    bool increased = false, converged = false;
    for (int n = first; n <= params.n_max; ++n) {
        double t = 0.0;
        if (n == 0) {
            t = l2;
        } else {
            const double lf = 4.0 * std::lgamma(n + 1.0);
            for (std::size_t i = 0; i < power.size(); ++i) {
                if (power[i] == 0.0) continue;
                const double sk = sigma * std::abs(grid.wavenumber(i));
                t += std::exp(2.0 * n * std::log(sk) - lf) * power[i];
            }
            t *= inv_len;
            if (squared_index) t *= static_cast<double>(n) * n;
        }
        if (n > 5 && !r.terms.empty() && t > r.terms.back()) increased = true;
        r.terms.push_back(t);
        sum += t;
        r.truncated_at = n;
        if (n >= 1 && t <= params.tail_tol * sum) {
            converged = true;
            break;
        }
    }
    r.roundoff_flag = increased && !converged;
    r.value = std::sqrt(sum);
    return r;
}

double radius(double t, const GevreyParams& params) {
    if (t < 0.0) throw std::invalid_argument("radius: t must be non-negative");
    const double phi = params.L0 - params.delta0 * t;
    if (phi <= 0.0) throw RadiusExhausted("exhausted radius: phi(t) <= 0 at t = " + std::to_string(t));
    return phi;
}

double energy(const Field& W, const Field& U, double t, const GevreyParams& params) {
    const double phi = radius(t, params);
    const Field Wa = derivative(W, 1);
    const double u = gevrey_norm(U, phi, GevreyKind::Ydot, params).value;
    const double w = gevrey_norm(Wa, phi, GevreyKind::X, params).value;
    return 0.5 * (u * u + w * w);
}

double embedding_bound(const Field& f, double sigma, int n, const GevreyParams& params) {
    if (!(sigma > 0.0)) throw std::invalid_argument("embedding_bound: sigma must be positive");
    const double norm = gevrey_norm(f, sigma, GevreyKind::X, params).value;
    const double a = std::exp(2.0 * std::lgamma(n + 2.0) - (n + 1) * std::log(sigma));
    const double b = std::exp(2.0 * std::lgamma(n + 1.0) - n * std::log(sigma));
    return (a + b) * norm;
}

}  // namespace vwl
