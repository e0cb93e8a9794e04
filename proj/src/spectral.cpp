#include "vwl/spectral.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

namespace vwl {

namespace {
std::atomic<double> hilbert_sign{1.0};
}

namespace testing {
void set_hilbert_sign(double s) { hilbert_sign = s; }
}  // namespace testing

Field apply_multiplier(const Field& f, const std::function<cplx(double)>& m, bool real_out, bool drop_nyquist) {
    const auto& grid = f.grid();
    const auto spec = f.spectrum();
    std::vector<cplx> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i] * m(grid.wavenumber(i));
    if (drop_nyquist) out[grid.nyquist_index()] = 0.0;
    return Field::from_spectrum(f.grid_ptr(), out, real_out);
}

Field hilbert(const Field& f) {
    const double sign = hilbert_sign.load();
    return apply_multiplier(
        f, [sign](double k) { return cplx(k > 0 ? -sign : (k < 0 ? sign : 0.0), 0.0); }, false, true);
}

Field lambda_op(const Field& f) {
    return apply_multiplier(f, [](double k) { return cplx(std::abs(k), 0.0); }, f.is_real(), false);
}

Field derivative(const Field& f, int n) {
    if (n < 0) throw std::invalid_argument("derivative order must be non-negative");
    if (n == 0) return f;
    const bool odd = n % 2 == 1;
    return apply_multiplier(
        f, [n](double k) { return std::pow(cplx(0.0, k), n); }, f.is_real(), odd);
}

Field spectral_filter(const Field& f) {
    const double kmax = f.grid().k_max();
    return apply_multiplier(
        f, [kmax](double k) { return cplx(std::exp(-36.0 * std::pow(std::abs(k) / kmax, 36)), 0.0); }, f.is_real(),
        false);
}

Field plus_hilbert(const Field& f) { return f + hilbert(f); }
Field minus_hilbert(const Field& f) { return f - hilbert(f); }

Field positive_frequency_part(const Field& f) {
    return apply_multiplier(f, [](double k) { return cplx(k > 0 ? 1.0 : 0.0, 0.0); }, false, true);
}

Field commutator_spectral(const Field& f, const Field& g) {
    require_same_grid(f, g);
    return f * hilbert(g) - hilbert(f * g);
}

namespace {

double distance_to_curve(const Field& Z, cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : Z.samples()) d = std::min(d, std::abs(z - p));
    return d;
}

// int_E^inf c / (b (z - b)) db
cplx right_tail(cplx c, cplx z, double E) { return c / z * std::log(1.0 - z / E); }
// int_{-inf}^{-E} c / (b (z - b)) db
cplx left_tail(cplx c, cplx z, double E) { return -c / z * std::log(1.0 + z / E); }

}  // namespace

cplx cauchy_velocity(const Field& Z, const Field& Z_alpha, const Field& F, cplx z) {
    require_same_grid(Z, F);
    require_same_grid(Z, Z_alpha);
    const auto& grid = Z.grid();
    const double h = grid.spacing();
    if (distance_to_curve(Z, z) < 4.0 * h)
        throw QuadratureError("near-boundary evaluation: point is within 4 grid spacings of the curve");
    const auto zs = Z.samples();
    const auto za = Z_alpha.samples();
    const auto fs = F.samples();
    const std::size_t n = grid.size();
    cplx s = 0.0;
    // alpha_0 = -L is skipped so the rule is mirror symmetric; both tails start at L - h/2.
    for (std::size_t j = 1; j < n; ++j) s += za[j] * fs[j] / (z - zs[j]);
    s *= h;
    const double a_right = grid.alpha(n - 1);
    const double edge = a_right + 0.5 * h;
    s += right_tail(fs[n - 1] * a_right, z, edge);
    s += left_tail(-fs[1] * a_right, z, edge);
    return s / cplx(0.0, 2.0 * std::numbers::pi);
}

cplx cauchy_velocity(const Field& Z, const Field& F, cplx z) {
    // Z - alpha decays; alpha itself is not periodic.
    const auto alpha = Field::sample(Z.grid_ptr(), [](double a) { return cplx(a, 0.0); });
    return cauchy_velocity(Z, derivative(Z - alpha, 1) + cplx(1.0, 0.0), F, z);
}

std::vector<cplx> fd_derivative(std::span<const cplx> f, double h) {
    static constexpr double central[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    static constexpr double forward[] = {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -1.0 / 4.0};
    const std::size_t n = f.size();
    std::vector<cplx> d(n);
    for (std::size_t i = 4; i + 4 < n; ++i) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < 4; ++m) s += central[m] * (f[i + m + 1] - f[i - m - 1]);
        d[i] = s / h;
    }
    for (std::size_t i = 0; i < 4 && i < n; ++i) {
        cplx a = 0.0, b = 0.0;
        for (std::size_t m = 0; m < 5; ++m) {
            a += forward[m] * f[i + m];
            b -= forward[m] * f[n - 1 - i - m];
        }
        d[i] = a / h;
        d[n - 1 - i] = b / h;
    }
    return d;
}

namespace {

// int_0^1 u^p / (1 - s u)^2 du for p = 1, 2.
double k1_integral(double s) {
    if (std::abs(s) < 0.05) {
        double sum = 0.0, sp = 1.0;
        for (int m = 0; m < 24; ++m, sp *= s) sum += (m + 1) * sp / (m + 2);
        return sum;
    }
    return (s / (1.0 - s) + std::log1p(-s)) / (s * s);
}

double k2_integral(double s) {
    if (std::abs(s) < 0.05) {
        double sum = 0.0, sp = 1.0;
        for (int m = 0; m < 24; ++m, sp *= s) sum += (m + 1) * sp / (m + 3);
        return sum;
    }
    return (1.0 / (1.0 - s) + 2.0 * std::log1p(-s) - 1.0 + s) / (s * s * s);
}

// int_E^inf |fa - c/b|^2 / (a - b)^2 db for |a| < E.
double sq_diff_tail(double a, cplx fa, cplx c, double E) {
    const double s = a / E;
    const double k0 = 1.0 / (1.0 - s);
    return (std::norm(fa) * k0 - 2.0 * (fa * std::conj(c)).real() * k1_integral(s) / E +
            std::norm(c) * k2_integral(s) / (E * E)) /
           E;
}

}  // namespace

Field sq_diff_integral(const Field& f, Kernel kernel) {
    const auto& grid = f.grid();
    const double h = grid.spacing();
    const std::size_t n = grid.size();
    const auto s = f.samples();
    const auto df = fd_derivative(s, h);
    std::vector<double> raw(n);
    switch (kernel) {
        case Kernel::convolution: kernels::sq_diff_convolution(s, df, h, raw); break;
        case Kernel::parallel_direct: kernels::sq_diff_direct(s, df, h, raw, kernels::Exec::parallel); break;
        case Kernel::serial_direct: kernels::sq_diff_direct(s, df, h, raw, kernels::Exec::serial); break;
    }
    // A common value at both ends is the far-field limit; the tails model f - f_inf ~ c/b.
    const double scale = std::max(std::abs(s[0]), std::abs(s[n - 1]));
    const cplx f_inf = std::abs(s[0] - s[n - 1]) <= 1e-12 * scale ? 0.5 * (s[0] + s[n - 1]) : cplx(0.0);
    const double a_left = grid.alpha(0);
    const double a_right = grid.alpha(n - 1);
    const cplx c_right = (s[n - 1] - f_inf) * a_right;
    const cplx c_left = -(s[0] - f_inf) * a_left;
    const double e_right = a_right + 0.5 * h;
    const double e_left = -a_left + 0.5 * h;
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = grid.alpha(i);
        const cplx fi = s[i] - f_inf;
        const double tail = sq_diff_tail(a, fi, c_right, e_right) + sq_diff_tail(-a, fi, c_left, e_left);
        out[i] = std::max(0.0, raw[i] + tail) / (2.0 * std::numbers::pi);
    }
    return Field(f.grid_ptr(), std::move(out), true);
}

Field pv_commutator(const Field& f, const Field& g, Kernel kernel) {
    require_same_grid(f, g);
    const double h = f.grid().spacing();
    const auto fs = f.samples();
    const auto df = fd_derivative(fs, h);
    std::vector<cplx> out(f.size());
    switch (kernel) {
        case Kernel::convolution: kernels::commutator_convolution(fs, df, g.samples(), h, out); break;
        case Kernel::parallel_direct:
            kernels::commutator_direct(fs, df, g.samples(), h, out, kernels::Exec::parallel);
            break;
        case Kernel::serial_direct:
            kernels::commutator_direct(fs, df, g.samples(), h, out, kernels::Exec::serial);
            break;
    }
    const cplx scale = 1.0 / cplx(0.0, std::numbers::pi);
    for (auto& v : out) v *= scale;
    return Field(f.grid_ptr(), std::move(out), false);
}

double sobolev_norm(const Field& f, int s) {
    const auto& grid = f.grid();
    const auto spec = f.spectrum();
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double k = grid.wavenumber(i);
        sum += std::pow(1.0 + k * k, s) * std::norm(spec[i]);
    }
    return std::sqrt(sum / (2.0 * grid.half_length()));
}

double sobolev_noise_floor(const GridSpec& grid, int s, double amplitude) {
    double sum = 0.0;
    for (double k : grid.wavenumbers_fft_order()) sum += std::pow(1.0 + k * k, s);
    return 64.0 * std::numeric_limits<double>::epsilon() * amplitude * std::sqrt(grid.spacing() * sum);
}

double odd_defect(const Field& f) {
    const auto& grid = f.grid();
    const auto s = f.samples();
    double d = 0.0;
    for (std::size_t j = 1; j < s.size(); ++j) d = std::max(d, std::abs(s[j] + s[grid.mirror(j)]));
    return d;
}

}  // namespace vwl
