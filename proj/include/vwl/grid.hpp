#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace vwl {

using cplx = std::complex<double>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform periodic grid on [-half_length, half_length).
class GridSpec {
public:
    GridSpec(double half_length, std::size_t n_points);

    static std::shared_ptr<const GridSpec> make(double half_length, std::size_t n_points);

    double half_length() const { return half_length_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double k_max() const;

    double alpha(std::size_t j) const { return -half_length_ + static_cast<double>(j) * h_; }
    std::vector<double> alphas() const;

    // Wavenumber of spectrum slot i (FFT storage order).
    double wavenumber(std::size_t i) const { return k_[i]; }
    std::span<const double> wavenumbers_fft_order() const { return k_; }
    // k_m for m = -n/2 .. n/2-1.
    std::vector<double> wavenumbers() const;

    std::size_t nyquist_index() const { return n_ / 2; }
    // Index of the mirror point -alpha_j.
    std::size_t mirror(std::size_t j) const { return (n_ - j) % n_; }

    bool operator==(const GridSpec& o) const { return n_ == o.n_ && half_length_ == o.half_length_; }

private:
    double half_length_;
    std::size_t n_;
    double h_;
    std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

// Unnormalized FFTW transforms; plans are cached per size.
void fft_forward(std::span<const cplx> in, std::span<cplx> out);
void fft_backward(std::span<const cplx> in, std::span<cplx> out);

class Field {
public:
    Field() = default;
    Field(GridPtr grid, std::vector<cplx> samples, bool real = false);

    static Field zeros(GridPtr grid, bool real = true);
    static Field constant(GridPtr grid, cplx c);
    static Field from_real(GridPtr grid, const std::vector<double>& v);
    static Field sample(GridPtr grid, const std::function<cplx(double)>& f, bool real = false);
    static Field sample_real(GridPtr grid, const std::function<double(double)>& f);
    // Inverse of spectrum(): coefficients in FFT order, f^(k) = sum f e^{-ik alpha} h.
    static Field from_spectrum(GridPtr grid, std::span<const cplx> spec, bool real);

    const GridSpec& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    bool empty() const { return !grid_; }
    std::size_t size() const { return samples_.size(); }
    bool is_real() const { return real_; }

    std::span<const cplx> samples() const { return samples_; }
    cplx operator[](std::size_t j) const { return samples_[j]; }
    std::vector<double> real_part() const;
    std::vector<double> imag_part() const;

    // Computed once on first use, then shared by copies.
    std::span<const cplx> spectrum() const;

    Field conj() const;
    Field re() const;
    Field im() const;
    Field operator-() const;

    friend Field operator+(const Field& a, const Field& b);
    friend Field operator-(const Field& a, const Field& b);
    friend Field operator*(const Field& a, const Field& b);
    friend Field operator/(const Field& a, const Field& b);
    friend Field operator*(cplx c, const Field& a);
    friend Field operator*(double c, const Field& a);
    friend Field operator+(const Field& a, cplx c);

    double max_abs() const;
    double l2_norm() const;
    double mean_abs_boundary() const;

private:
    struct SpectrumCache {
        std::once_flag once;
        std::vector<cplx> data;
    };

    GridPtr grid_;
    std::vector<cplx> samples_;
    bool real_ = false;
    std::shared_ptr<SpectrumCache> cache_ = std::make_shared<SpectrumCache>();
};

void require_same_grid(const Field& a, const Field& b);

// Pointwise map over samples, optionally parallel.
Field map(const Field& a, const std::function<cplx(cplx)>& f, bool real);
Field map2(const Field& a, const Field& b, const std::function<cplx(cplx, cplx)>& f, bool real);

}  // namespace vwl
