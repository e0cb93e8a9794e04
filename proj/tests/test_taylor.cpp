#include "vwl/taylor.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vwl;
using std::numbers::pi;

TEST_CASE("flat pair coefficient") {
    const PairConfig zero{1.0, -3.0, 0.0};
    for (double a : {-5.0, 0.0, 0.7, 40.0}) CHECK(a1_flat_pair(a, zero) == 1.0);

    const PairConfig c{1.0, -2.0, 2.0 * pi};
    CHECK(g1_term(0.0, c) == doctest::Approx(0.064).epsilon(1e-14));
    CHECK(g2_term(0.0, c) == doctest::Approx(0.084).epsilon(1e-14));
    CHECK(a1_flat_pair(0.0, c) == doctest::Approx(1.148).epsilon(1e-14));
    for (double a : {0.3, 1.0, 2.5, 17.0}) CHECK(a1_flat_pair(a, c) == a1_flat_pair(-a, c));
}

TEST_CASE("reduced profile") {
    CHECK(g_profile(0.0) == -1.0);
    CHECK(std::abs(g_profile(1.0) - 0.25) <= 1e-15);
    CHECK(std::abs(g_profile(-1.0) - 0.25) <= 1e-15);
    CHECK(g_profile(2.0) == doctest::Approx(55.0 / 625.0).epsilon(1e-15));
    for (double k = -100.0; k <= 100.0; k += 1e-3) {
        const double g = g_profile(k);
        REQUIRE(g >= -1.0);
        REQUIRE(g <= 0.25 + 1e-16);
    }

    CHECK(std::abs(f_reduced(4.0, 1.0)) < 1e-15);
    CHECK(f_reduced(8.0, 1.0) == doctest::Approx(-1.0));
    CHECK_THROWS(f_reduced(-1.0, 0.0));

    auto inf_f = [](double gamma) {
        double m = 1e300;
        for (double k = -5.0; k <= 5.0; k += 1e-4) m = std::min(m, f_reduced(gamma, k));
        return m;
    };
    CHECK(inf_f(3.9) > 0.0);
    CHECK(inf_f(4.1) < 0.0);
    CHECK(std::abs(inf_f(4.0)) <= 1e-3);
    for (double gamma : {0.5, 2.0, 3.5}) CHECK(inf_f(gamma) > 0.0);
}

TEST_CASE("infimum of the flat pair coefficient") {
    const auto r0 = inf_a1_flat({1.0, -4.0, 0.0});
    CHECK(r0.value == 1.0);

    const double y = -10.0;
    const PairConfig proxy{1e-3, y, lambda_of(8.0, y)};
    const auto r = inf_a1_flat(proxy);
    CHECK(r.value == doctest::Approx(f_reduced(8.0, 1.0)).epsilon(1e-2));
    CHECK(std::abs(r.argmin) == doctest::Approx(10.0).epsilon(1e-2));

    const auto deep = inf_a1_flat({1.0, -50.0, 10.0});
    CHECK(std::abs(deep.value - 1.0) <= 50.0 / 50.0);

    // Golden section refines the coarse scan.
    const PairConfig c{1.0, -6.0, lambda_of(3.0, -6.0)};
    const auto m = inf_a1_flat(c);
    for (double a = 0.0; a < 100.0; a += 0.01) CHECK(a1_flat_pair(a, c) >= m.value - 1e-12);
}

TEST_CASE("crossing depth and gamma") {
    CHECK(crossing_depth(2.0 * pi * 27.0) == doctest::Approx(9.0));
    CHECK(crossing_depth(4.0 * pi) == doctest::Approx(std::cbrt(4.0)).epsilon(1e-14));
    CHECK(crossing_depth(2.0 * pi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(crossing_depth(-2.0 * pi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS(crossing_depth(0.0));

    CHECK(gamma_of(lambda_of(8.0, -12.0), -12.0) == doctest::Approx(8.0));
    CHECK(lambda_of(4.0, -1.0) == doctest::Approx(2.0 * pi));
    // gamma = 4 exactly at the crossing depth.
    const double lam = 50.0;
    CHECK(gamma_of(lam, -crossing_depth(lam)) == doctest::Approx(4.0));

    const auto p = stability_profile({1.0, -12.0, lambda_of(8.0, -12.0)});
    CHECK(p.gamma == doctest::Approx(8.0));
    CHECK(p.inf_value < 0.0);
    // Already past the crossing depth at y = -12.
    CHECK(p.crossing_depth > 12.0);
}

TEST_CASE("residue pair integral") {
    const cplx I(0.0, 1.0);
    CHECK(std::abs(residue_pair_integral(-I, -I) - cplx(pi)) < 1e-15);
    CHECK(std::abs(residue_pair_integral(-2.0 * I, -I) - cplx(2.0 * pi / 3.0)) < 1e-15);
    CHECK(std::abs(residue_pair_quadrature(-I, -I) - cplx(pi)) < 1e-10);
    CHECK(std::abs(residue_pair_quadrature(-2.0 * I, -I) - cplx(2.0 * pi / 3.0)) < 1e-10);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(-4.0, -0.3);
    for (int t = 0; t < 10; ++t) {
        const cplx w1(re(rng), im(rng)), w2(re(rng), im(rng));
        CHECK(std::abs(residue_pair_integral(w1, w2) - std::conj(residue_pair_integral(w2, w1))) < 1e-14);
        CHECK(std::abs(residue_pair_integral(w1, w2) - residue_pair_quadrature(w1, w2)) < 1e-9);
    }
    CHECK_THROWS(residue_pair_integral(I, -I));
    CHECK_THROWS(residue_pair_integral(-I, 0.0));
    CHECK_THROWS(residue_pair_quadrature(-I, 2.0 * I));
}

TEST_CASE("interaction sum") {
    CHECK(interaction_sum({Vortex{{0.0, -1.0}, 2.0 * pi}}, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(interaction_sum({}, 1.3) == 0.0);
    CHECK_THROWS(interaction_sum({Vortex{{0.0, 0.5}, 1.0}}, 0.0));

    const auto pair = PairConfig{1.0, -2.0, 3.0}.vortices();
    for (double a : {0.0, 0.5, 2.0, 9.0}) CHECK(interaction_sum(pair, a) == doctest::Approx(interaction_sum(pair, -a)));
}

TEST_CASE("far field and positivity") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ux(0.2, 3.0), uy(-12.0, -1.0), ul(-60.0, 60.0);
    for (int t = 0; t < 50; ++t) {
        const PairConfig c{ux(rng), uy(rng), ul(rng)};
        CHECK(g2_term(ul(rng), c) >= 0.0);
    }
    for (const PairConfig c : {PairConfig{1.0, -2.0, 2.0 * pi}, PairConfig{1.0, -12.0, lambda_of(8.0, -12.0)},
                               PairConfig{0.5, -3.0, 10.0}})
        CHECK(std::abs(a1_flat_pair(1e4, c) - 1.0) <= 1e-4);
}

TEST_CASE("closed form equals interaction sum minus the pair term") {
    // Flat line, zero wave: DtZ = Qbar, zdot_j = i lambda / (4 pi x), (I - H)[1/(a - z)^2] = 2/(a - z)^2.
    const cplx I(0.0, 1.0);
    for (const PairConfig c : {PairConfig{1.0, -2.0, 2.0 * pi}, PairConfig{0.5, -3.0, 10.0}, PairConfig{2.0, -3.0, -15.0}}) {
        const auto vs = c.vortices();
        const cplx zdot = I * c.lambda / (4.0 * pi * c.x);
        for (double a = -20.0; a <= 20.0; a += 0.37) {
            cplx qbar = 0.0;
            for (const auto& v : vs) qbar += I * v.strength / (2.0 * pi) / (a - std::conj(v.position));
            double pair = 0.0;
            for (const auto& v : vs) {
                const cplx d = a - v.position;
                pair += v.strength / (2.0 * pi) * std::real(2.0 / (d * d) * (qbar - zdot));
            }
            CHECK(std::abs(1.0 + interaction_sum(vs, a) - pair - a1_flat_pair(a, c)) < 1e-8);
        }
    }
}

TEST_CASE("sweep") {
    const auto rows = sweep(2.0, 8.0, 13, 1.0, -10.0);
    REQUIRE(rows.size() == 13);
    CHECK(rows.front().gamma == 2.0);
    CHECK(rows.back().gamma == 8.0);
    CHECK(rows.front().inf_A1 > 0.0);
    CHECK(rows.back().inf_A1 < 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].inf_A1 < rows[i - 1].inf_A1);
    CHECK(rows[3].lambda == doctest::Approx(lambda_of(rows[3].gamma, -10.0)));

    CHECK_THROWS(sweep(4.0, 2.0, 5, 1.0, -10.0));
    CHECK_THROWS(sweep(1.0, 2.0, 1, 1.0, -10.0));
    CHECK_THROWS(sweep(-1.0, 2.0, 5, 1.0, -10.0));
}

TEST_CASE("approach to one with depth") {
    const double lam = 10.0;
    double prev = -1e300;
    for (double y : {-10.0, -20.0, -40.0, -80.0}) {
        const auto r = inf_a1_flat({1.0, y, lam});
        CHECK(r.value > prev);
        CHECK(std::abs(r.value - 1.0) <= 5.0 / std::abs(y));
        prev = r.value;
    }
}
