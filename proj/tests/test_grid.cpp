#include "vwl/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vwl;
using std::numbers::pi;

TEST_CASE("grid spec invariants") {
    CHECK_THROWS_AS(GridSpec(10.0, 8), GridError);
    CHECK_THROWS_AS(GridSpec(10.0, 100), GridError);
    CHECK_THROWS_AS(GridSpec(-1.0, 64), GridError);

    const GridSpec g(200.0, 1 << 14);
    CHECK(g.spacing() * static_cast<double>(g.size()) == 400.0);
    CHECK(g.alpha(0) == -200.0);
    CHECK(g.alpha(g.size() / 2) == 0.0);

    const auto ks = g.wavenumbers();
    REQUIRE(ks.size() == g.size());
    CHECK(ks.front() == doctest::Approx(-pi * 8192 / 200.0));
    CHECK(ks.back() == doctest::Approx(pi * 8191 / 200.0));
    for (std::size_t i = 1; i < ks.size(); ++i) CHECK_LT(ks[i - 1], ks[i]);
    CHECK(g.wavenumber(1) == doctest::Approx(pi / 200.0));
    CHECK(g.wavenumber(g.size() - 1) == doctest::Approx(-pi / 200.0));

    for (std::size_t j : {1ul, 17ul, 8191ul})
        CHECK(g.alpha(g.mirror(j)) == doctest::Approx(-g.alpha(j)));
    CHECK(g.mirror(0) == 0);
}

TEST_CASE("real fields reject imaginary samples") {
    const auto g = GridSpec::make(10.0, 64);
    std::vector<cplx> v(64, cplx(1.0, 0.0));
    v[3] = cplx(1.0, 1e-3);
    CHECK_THROWS_AS(Field(g, v, true), GridError);
    v[3] = cplx(1.0, 1e-14);
    const Field f(g, v, true);
    CHECK(f[3].imag() == 0.0);
}

TEST_CASE("spectrum convention and round trip") {
    const auto g = GridSpec::make(20.0, 512);
    const Field f = Field::sample_real(g, [](double a) { return std::exp(-a * a); });
    const auto s = f.spectrum();
    for (std::size_t i : {0ul, 3ul, 20ul, 509ul}) {
        const double k = g->wavenumber(i);
        CHECK(std::abs(s[i] - cplx(std::sqrt(pi) * std::exp(-k * k / 4.0), 0.0)) < 1e-12);
    }

    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(512);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    const Field h(g, v);
    const Field back = Field::from_spectrum(g, h.spectrum(), false);
    CHECK((back - h).max_abs() <= 1e-12 * h.max_abs());
}

TEST_CASE("field arithmetic requires a shared grid") {
    const auto a = GridSpec::make(10.0, 64);
    const auto b = GridSpec::make(10.0, 128);
    CHECK_THROWS(Field::zeros(a) + Field::zeros(b));
    const Field x = Field::constant(a, 2.0);
    CHECK((x * x)[5] == cplx(4.0, 0.0));
    CHECK((3.0 * x)[0] == cplx(6.0, 0.0));
    CHECK((x / x).max_abs() == 1.0);
}
