#pragma once

#include "vwl/grid.hpp"
#include "vwl/kernels.hpp"

#include <functional>

namespace vwl {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Multiply the spectrum by m(k). Odd multipliers drop the Nyquist slot so
// that real fields stay real (or purely imaginary) after the transform.
Field apply_multiplier(const Field& f, const std::function<cplx(double)>& m, bool real_out, bool drop_nyquist);

// Multiplier -sgn(k), m(0) = 0.
Field hilbert(const Field& f);
Field lambda_op(const Field& f);
Field derivative(const Field& f, int n);

// exp(-36 (|k|/k_max)^36), applied to the state after every time step.
Field spectral_filter(const Field& f);

// (I + H) and (I - H).
Field plus_hilbert(const Field& f);
Field minus_hilbert(const Field& f);
// Part of the spectrum with k > 0, i.e. (I - H)/2 without the mean.
Field positive_frequency_part(const Field& f);

// f H g - H(f g): the multiplier form of [f, H] g.
Field commutator_spectral(const Field& f, const Field& g);

// (1/2 pi i) int Z_b F(b) / (z - Z(b)) db by the trapezoid rule, plus the
// far-field c/b tail beyond the truncation boundary.
cplx cauchy_velocity(const Field& Z, const Field& Z_alpha, const Field& F, cplx z);
cplx cauchy_velocity(const Field& Z, const Field& F, cplx z);

enum class Kernel { convolution, parallel_direct, serial_direct };

// (1/2 pi) int |f(a) - f(b)|^2 / (a - b)^2 db.
Field sq_diff_integral(const Field& f, Kernel kernel = Kernel::convolution);
// (1/pi i) int (f(a) - f(b)) / (a - b) g(b) db.
Field pv_commutator(const Field& f, const Field& g, Kernel kernel = Kernel::convolution);

// Eighth-order central differences, fourth-order one-sided at the two ends.
std::vector<cplx> fd_derivative(std::span<const cplx> f, double h);

// Discrete H^s norm with weight (1 + k^2)^s.
double sobolev_norm(const Field& f, int s);
// Round-off level of sobolev_norm for a field of sup-norm amplitude.
double sobolev_noise_floor(const GridSpec& grid, int s, double amplitude);

// max_j |f(alpha_j) + f(-alpha_j)| over j >= 1 (alpha_0 = -L is its own mirror).
double odd_defect(const Field& f);

namespace testing {
// Mutation hook for the verification suite: flips the sign of the H multiplier.
void set_hilbert_sign(double s);
}

}  // namespace vwl
