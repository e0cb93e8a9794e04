#include "vwl/kernels.hpp"

#include "vwl/grid.hpp"

#include <vector>

namespace vwl::kernels {

void sq_diff_direct(std::span<const cplx> f, std::span<const cplx> df, double h, std::span<double> out,
                    Exec exec) {
    const long n = static_cast<long>(f.size());
    std::vector<double> w(n);
    for (long d = 1; d < n; ++d) w[d] = 1.0 / (static_cast<double>(d) * static_cast<double>(d) * h);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (long i = 0; i < n; ++i) {
        double s = 0.0;
        const cplx fi = f[i];
        for (long j = 0; j < i; ++j) s += std::norm(fi - f[j]) * w[i - j];
        for (long j = i + 1; j < n; ++j) s += std::norm(fi - f[j]) * w[j - i];
        out[i] = s + h * std::norm(df[i]);
    }
}

void commutator_direct(std::span<const cplx> f, std::span<const cplx> df, std::span<const cplx> g, double h,
                       std::span<cplx> out, Exec exec) {
    const long n = static_cast<long>(f.size());
    std::vector<double> w(n);
    for (long d = 1; d < n; ++d) w[d] = 1.0 / static_cast<double>(d);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (long i = 0; i < n; ++i) {
        cplx s = 0.0;
        const cplx fi = f[i];
        for (long j = 0; j < i; ++j) s += (fi - f[j]) * g[j] * w[i - j];
        for (long j = i + 1; j < n; ++j) s -= (fi - f[j]) * g[j] * w[j - i];
        out[i] = s + h * df[i] * g[i];
    }
}

namespace {

// Linear convolution y_i = sum_j K(i-j) x_j over 0 <= i,j < n with K(0) = 0,
// evaluated for several inputs against one kernel.
class LinearConvolver {
public:
    template <class Kernel>
    LinearConvolver(std::size_t n, Kernel kernel) : n_(n), m_(2 * n), khat_(m_) {
        std::vector<cplx> k(m_);
        for (std::size_t d = 1; d < n; ++d) {
            k[d] = kernel(static_cast<long>(d));
            k[m_ - d] = kernel(-static_cast<long>(d));
        }
        fft_forward(k, khat_);
    }

    std::vector<cplx> apply(std::span<const cplx> x) const {
        std::vector<cplx> buf(m_), spec(m_);
        std::copy(x.begin(), x.end(), buf.begin());
        fft_forward(buf, spec);
        const double scale = 1.0 / static_cast<double>(m_);
        for (std::size_t i = 0; i < m_; ++i) spec[i] *= khat_[i] * scale;
        fft_backward(spec, buf);
        buf.resize(n_);
        return buf;
    }

private:
    std::size_t n_, m_;
    std::vector<cplx> khat_;
};

}  // namespace

void sq_diff_convolution(std::span<const cplx> f, std::span<const cplx> df, double h, std::span<double> out) {
    const std::size_t n = f.size();
    const LinearConvolver conv(n, [h](long d) { return cplx(1.0 / (static_cast<double>(d) * d * h), 0.0); });
    std::vector<cplx> mod2(n);
    for (std::size_t j = 0; j < n; ++j) mod2[j] = std::norm(f[j]);
    const auto c1 = conv.apply(mod2);
    const auto c2 = conv.apply(f);
    // Row sums of the kernel: (H(i) + H(n-1-i)) / h with H(m) = sum_{d<=m} 1/d^2.
    std::vector<double> partial(n);
    for (std::size_t d = 1; d < n; ++d) partial[d] = partial[d - 1] + 1.0 / (static_cast<double>(d) * d);
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nn; ++i) {
        const double c0 = (partial[i] + partial[nn - 1 - i]) / h;
        const cplx fi = f[i];
        out[i] = std::norm(fi) * c0 + c1[i].real() - 2.0 * (std::conj(fi) * c2[i]).real() + h * std::norm(df[i]);
    }
}

void commutator_convolution(std::span<const cplx> f, std::span<const cplx> df, std::span<const cplx> g,
                            double h, std::span<cplx> out) {
    const std::size_t n = f.size();
    const LinearConvolver conv(n, [](long d) { return cplx(1.0 / static_cast<double>(d), 0.0); });
    std::vector<cplx> fg(n);
    for (std::size_t j = 0; j < n; ++j) fg[j] = f[j] * g[j];
    const auto kg = conv.apply(g);
    const auto kfg = conv.apply(fg);
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nn; ++i) out[i] = f[i] * kg[i] - kfg[i] + h * df[i] * g[i];
}

}  // namespace vwl::kernels
