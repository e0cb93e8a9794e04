#pragma once

#include <complex>
#include <span>

namespace vwl::kernels {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

// Trapezoid sums over a uniform grid of spacing h, diagonal cell supplied by df = f'.
//   sq_diff:     S_i = sum_{j!=i} h |f_i - f_j|^2 / ((i-j)h)^2 + h |df_i|^2
//   commutator:  C_i = sum_{j!=i} h (f_i - f_j) / ((i-j)h) g_j + h df_i g_i
//
// The direct forms are O(n^2); the convolution forms give the same sums in
// O(n log n) by splitting the numerators and using zero-padded FFTs.

void sq_diff_direct(std::span<const cplx> f, std::span<const cplx> df, double h, std::span<double> out,
                    Exec exec);
void sq_diff_convolution(std::span<const cplx> f, std::span<const cplx> df, double h, std::span<double> out);

void commutator_direct(std::span<const cplx> f, std::span<const cplx> df, std::span<const cplx> g, double h,
                       std::span<cplx> out, Exec exec);
void commutator_convolution(std::span<const cplx> f, std::span<const cplx> df, std::span<const cplx> g,
                            double h, std::span<cplx> out);

}  // namespace vwl::kernels
