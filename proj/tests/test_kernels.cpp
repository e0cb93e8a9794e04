#include "vwl/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace vwl::kernels;

namespace {

struct Sample {
    std::vector<cplx> f, df, g;
    double h;
};

Sample random_sample(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Sample s{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n), 0.05};
    for (std::size_t i = 0; i < n; ++i) {
        s.f[i] = {nd(rng), nd(rng)};
        s.df[i] = {nd(rng), nd(rng)};
        s.g[i] = {nd(rng), nd(rng)};
    }
    return s;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("sq_diff: serial, parallel and convolution agree") {
    for (std::size_t n : {16u, 257u, 1024u}) {
        const auto s = random_sample(n, 3 + n);
        std::vector<double> a(n), b(n), c(n);
        sq_diff_direct(s.f, s.df, s.h, a, Exec::serial);
        sq_diff_direct(s.f, s.df, s.h, b, Exec::parallel);
        sq_diff_convolution(s.f, s.df, s.h, c);
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::abs(v));
        CHECK(max_diff(a, b) <= 1e-12 * scale);
        CHECK(max_diff(a, c) <= 1e-12 * scale);
    }
}

TEST_CASE("commutator: serial, parallel and convolution agree") {
    for (std::size_t n : {16u, 257u, 1024u}) {
        const auto s = random_sample(n, 17 + n);
        std::vector<cplx> a(n), b(n), c(n);
        commutator_direct(s.f, s.df, s.g, s.h, a, Exec::serial);
        commutator_direct(s.f, s.df, s.g, s.h, b, Exec::parallel);
        commutator_convolution(s.f, s.df, s.g, s.h, c);
        double scale = 0.0;
        for (auto v : a) scale = std::max(scale, std::abs(v));
        CHECK(max_diff(a, b) <= 1e-12 * scale);
        CHECK(max_diff(a, c) <= 1e-12 * scale);
    }
}

TEST_CASE("kernel sums on small inputs") {
    // f = (0, 1), h = 1: S_0 = |0-1|^2 / 1 + |df_0|^2.
    const std::vector<cplx> f{0.0, 1.0}, df{2.0, 0.0}, g{1.0, 3.0};
    std::vector<double> s(2);
    sq_diff_direct(f, df, 1.0, s, Exec::serial);
    CHECK(s[0] == doctest::Approx(5.0));
    CHECK(s[1] == doctest::Approx(1.0));
    std::vector<cplx> c(2);
    commutator_direct(f, df, g, 1.0, c, Exec::serial);
    // C_0 = (0 - 1)/(-1) * 3 + 2 * 1, C_1 = (1 - 0)/1 * 1 + 0.
    CHECK(std::abs(c[0] - cplx(5.0)) < 1e-15);
    CHECK(std::abs(c[1] - cplx(1.0)) < 1e-15);
    std::vector<double> sc(2);
    sq_diff_convolution(f, df, 1.0, sc);
    CHECK(sc[0] == doctest::Approx(5.0));
}
