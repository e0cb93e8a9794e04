#include "vwl/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace vwl {

GridSpec::GridSpec(double half_length, std::size_t n_points)
    : half_length_(half_length), n_(n_points), h_(2.0 * half_length / static_cast<double>(n_points)) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw GridError("grid half_length must be positive and finite");
    if (n_points < 16 || !std::has_single_bit(n_points))
        throw GridError("grid n_points must be a power of two >= 16, got " + std::to_string(n_points));
    k_.resize(n_);
    const double dk = std::numbers::pi / half_length_;
    for (std::size_t i = 0; i < n_; ++i) {
        const long m = i < n_ / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n_);
        k_[i] = dk * static_cast<double>(m);
    }
}

std::shared_ptr<const GridSpec> GridSpec::make(double half_length, std::size_t n_points) {
    return std::make_shared<const GridSpec>(half_length, n_points);
}

double GridSpec::k_max() const { return std::numbers::pi * static_cast<double>(n_ / 2) / half_length_; }

std::vector<double> GridSpec::alphas() const {
    std::vector<double> a(n_);
    for (std::size_t j = 0; j < n_; ++j) a[j] = alpha(j);
    return a;
}

std::vector<double> GridSpec::wavenumbers() const {
    std::vector<double> k(n_);
    for (std::size_t i = 0; i < n_; ++i) k[i] = k_[(i + n_ / 2) % n_];
    return k;
}

namespace {

struct PlanPair {
    fftw_plan fwd;
    fftw_plan bwd;
};

std::mutex plan_mutex;
std::map<std::size_t, PlanPair> plans;

const PlanPair& plans_for(std::size_t n) {
    std::lock_guard lock(plan_mutex);
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    auto* a = fftw_alloc_complex(n);
    auto* b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(static_cast<int>(n), a, b, FFTW_BACKWARD, flags)};
    fftw_free(a);
    fftw_free(b);
    return plans.emplace(n, p).first->second;
}

fftw_complex* as_fftw(const cplx* p) {
    return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p));
}

}  // namespace

void fft_forward(std::span<const cplx> in, std::span<cplx> out) {
    const auto& p = plans_for(in.size());
    if (in.data() == out.data()) {
        std::vector<cplx> tmp(in.begin(), in.end());
        fftw_execute_dft(p.fwd, as_fftw(tmp.data()), as_fftw(out.data()));
    } else {
        fftw_execute_dft(p.fwd, as_fftw(in.data()), as_fftw(out.data()));
    }
}

void fft_backward(std::span<const cplx> in, std::span<cplx> out) {
    const auto& p = plans_for(in.size());
    if (in.data() == out.data()) {
        std::vector<cplx> tmp(in.begin(), in.end());
        fftw_execute_dft(p.bwd, as_fftw(tmp.data()), as_fftw(out.data()));
    } else {
        fftw_execute_dft(p.bwd, as_fftw(in.data()), as_fftw(out.data()));
    }
}

Field::Field(GridPtr grid, std::vector<cplx> samples, bool real)
    : grid_(std::move(grid)), samples_(std::move(samples)), real_(real) {
    if (!grid_) throw GridError("field without grid");
    if (samples_.size() != grid_->size())
        throw GridError("sample count " + std::to_string(samples_.size()) + " does not match grid size " +
                        std::to_string(grid_->size()));
    if (real_) {
        double mx = 0.0, mi = 0.0;
        for (const auto& s : samples_) {
            mx = std::max(mx, std::abs(s));
            mi = std::max(mi, std::abs(s.imag()));
        }
        if (mi > 1e-12 * mx)
            throw GridError("field flagged real has imaginary part " + std::to_string(mi));
        for (auto& s : samples_) s = {s.real(), 0.0};
    }
}

Field Field::zeros(GridPtr grid, bool real) {
    const auto n = grid->size();
    return Field(std::move(grid), std::vector<cplx>(n), real);
}

Field Field::constant(GridPtr grid, cplx c) {
    const auto n = grid->size();
    return Field(std::move(grid), std::vector<cplx>(n, c), c.imag() == 0.0);
}

Field Field::from_real(GridPtr grid, const std::vector<double>& v) {
    std::vector<cplx> s(v.begin(), v.end());
    return Field(std::move(grid), std::move(s), true);
}

Field Field::sample(GridPtr grid, const std::function<cplx(double)>& f, bool real) {
    std::vector<cplx> s(grid->size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(grid->alpha(j));
    return Field(std::move(grid), std::move(s), real);
}

Field Field::sample_real(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<cplx> s(grid->size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = f(grid->alpha(j));
    return Field(std::move(grid), std::move(s), true);
}

// Phase (-1)^m moves the origin from alpha_0 = -L to alpha = 0.
Field Field::from_spectrum(GridPtr grid, std::span<const cplx> spec, bool real) {
    const auto n = grid->size();
    if (spec.size() != n) throw GridError("spectrum length does not match grid");
    std::vector<cplx> tmp(n), out(n);
    const double scale = 1.0 / (static_cast<double>(n) * grid->spacing());
    for (std::size_t i = 0; i < n; ++i) tmp[i] = (i % 2 ? -spec[i] : spec[i]) * scale;
    fft_backward(tmp, out);
    if (real)
        for (auto& s : out) s = {s.real(), 0.0};
    return Field(std::move(grid), std::move(out), real);
}

std::span<const cplx> Field::spectrum() const {
    std::call_once(cache_->once, [this] {
        const auto n = samples_.size();
        cache_->data.resize(n);
        fft_forward(samples_, cache_->data);
        const double h = grid_->spacing();
        for (std::size_t i = 0; i < n; ++i) cache_->data[i] *= (i % 2 ? -h : h);
    });
    return cache_->data;
}

std::vector<double> Field::real_part() const {
    std::vector<double> v(samples_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = samples_[j].real();
    return v;
}

std::vector<double> Field::imag_part() const {
    std::vector<double> v(samples_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = samples_[j].imag();
    return v;
}

Field Field::conj() const {
    return map(*this, [](cplx z) { return std::conj(z); }, real_);
}

Field Field::re() const {
    return map(*this, [](cplx z) { return cplx(z.real(), 0.0); }, true);
}

Field Field::im() const {
    return map(*this, [](cplx z) { return cplx(z.imag(), 0.0); }, true);
}

Field Field::operator-() const {
    return map(*this, [](cplx z) { return -z; }, real_);
}

Field operator+(const Field& a, const Field& b) {
    return map2(a, b, [](cplx x, cplx y) { return x + y; }, a.real_ && b.real_);
}

Field operator-(const Field& a, const Field& b) {
    return map2(a, b, [](cplx x, cplx y) { return x - y; }, a.real_ && b.real_);
}

Field operator*(const Field& a, const Field& b) {
    return map2(a, b, [](cplx x, cplx y) { return x * y; }, a.real_ && b.real_);
}

Field operator/(const Field& a, const Field& b) {
    return map2(a, b, [](cplx x, cplx y) { return x / y; }, a.real_ && b.real_);
}

Field operator*(cplx c, const Field& a) {
    return map(a, [c](cplx x) { return c * x; }, a.real_ && c.imag() == 0.0);
}

Field operator*(double c, const Field& a) {
    return map(a, [c](cplx x) { return c * x; }, a.real_);
}

Field operator+(const Field& a, cplx c) {
    return map(a, [c](cplx x) { return x + c; }, a.real_ && c.imag() == 0.0);
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& s : samples_) m = std::max(m, std::abs(s));
    return m;
}

double Field::l2_norm() const {
    double s = 0.0;
    for (const auto& v : samples_) s += std::norm(v);
    return std::sqrt(s * grid_->spacing());
}

double Field::mean_abs_boundary() const {
    return 0.5 * (std::abs(samples_.front()) + std::abs(samples_.back()));
}

void require_same_grid(const Field& a, const Field& b) {
    if (a.grid_ptr() == b.grid_ptr()) return;
    if (!a.grid_ptr() || !b.grid_ptr() || !(a.grid() == b.grid()))
        throw GridError("grid mismatch between operands");
}

Field map(const Field& a, const std::function<cplx(cplx)>& f, bool real) {
    std::vector<cplx> out(a.size());
    const auto s = a.samples();
    const long n = static_cast<long>(out.size());
#pragma omp parallel for if (n > 4096)
    for (long j = 0; j < n; ++j) out[j] = f(s[j]);
    if (real)
        for (auto& v : out) v = {v.real(), 0.0};
    return Field(a.grid_ptr(), std::move(out), real);
}

Field map2(const Field& a, const Field& b, const std::function<cplx(cplx, cplx)>& f, bool real) {
    require_same_grid(a, b);
    std::vector<cplx> out(a.size());
    const auto sa = a.samples();
    const auto sb = b.samples();
    const long n = static_cast<long>(out.size());
#pragma omp parallel for if (n > 4096)
    for (long j = 0; j < n; ++j) out[j] = f(sa[j], sb[j]);
    if (real)
        for (auto& v : out) v = {v.real(), 0.0};
    return Field(a.grid_ptr(), std::move(out), real);
}

}  // namespace vwl
