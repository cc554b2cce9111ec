#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polarshape/awgn.hpp"
#include "polarshape/rng.hpp"

using namespace polarshape;

TEST_CASE("awgn capacity values") {
    CHECK(awgn_capacity(0.0) == 0.0);
    CHECK(awgn_capacity(1.0) == doctest::Approx(0.5));
    CHECK(awgn_capacity(15.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(awgn_capacity(-0.1), std::invalid_argument);
}

TEST_CASE("gauss hermite rules integrate normal moments") {
    for (int n : {1, 2, 8, 64, 256}) {
        const GaussHermiteRule rule = gauss_hermite_rule(n);
        double mass = 0.0, mean = 0.0, second = 0.0, fourth = 0.0;
        for (int i = 0; i < n; ++i) {
            mass += rule.weights[i];
            mean += rule.weights[i] * rule.nodes[i];
            second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
            fourth += rule.weights[i] * std::pow(rule.nodes[i], 4);
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mean == doctest::Approx(0.0).epsilon(1e-10));
        if (n >= 2) CHECK(second == doctest::Approx(1.0).epsilon(1e-10));
        if (n >= 4) CHECK(fourth == doctest::Approx(3.0).epsilon(1e-9));
    }
    // Two-point rule is +-1 after normal scaling.
    const GaussHermiteRule two = gauss_hermite_rule(2);
    CHECK(two.nodes[0] == doctest::Approx(-1.0));
    CHECK(two.nodes[1] == doctest::Approx(1.0));
    CHECK(two.weights[0] == doctest::Approx(0.5));
}

TEST_CASE("single point carries no information") {
    Constellation c;
    c.points = {0.0};
    c.probs = {1.0};
    c.m = 1;
    CHECK(mi_discrete_awgn(c, 1.0) == 0.0);
}

TEST_CASE("binary antipodal constellation approaches one bit at low noise") {
    Constellation c;
    c.points = {-1.0, 1.0};
    c.probs = {0.5, 0.5};
    c.m = 1;
    CHECK(mi_discrete_awgn(c, 1e-4) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("binary antipodal mutual information matches Monte Carlo") {
    Constellation c;
    c.points = {-1.0, 1.0};
    c.probs = {0.5, 0.5};
    c.m = 1;
    const double v = 1.0;
    const double exact = mi_discrete_awgn(c, v, 1e-9);

    // I = E[log2 f(Y|X) - log2 f(Y)], sampled with a Box-Muller normal.
    RandomStream s(2024, {stream_purpose::kGeneric, 0, 0});
    const int n = 10000000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u1 = std::max(s.next_uniform(), 1e-300);
        const double u2 = s.next_uniform();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        const double x = s.next_bit() ? 1.0 : -1.0;
        const double y = x + z * std::sqrt(v);
        const double f_yx = std::exp(-(y - x) * (y - x) / (2 * v));
        const double f_y = 0.5 * (std::exp(-(y - 1) * (y - 1) / (2 * v)) +
                                  std::exp(-(y + 1) * (y + 1) / (2 * v)));
        const double term = std::log2(f_yx / f_y);
        acc += term;
        acc2 += term * term;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    CHECK(std::fabs(exact - mean) <= 3.0 * se);
}

TEST_CASE("dyadic construction invariants") {
    const Constellation one = dyadic_gaussian_constellation(1, 1.0);
    CHECK(one.points.size() == 2);
    CHECK(one.points[0] == doctest::Approx(-1.0));
    CHECK(one.points[1] == doctest::Approx(1.0));
    CHECK(one.probs[0] == doctest::Approx(0.5));

    for (int m = 1; m <= 8; ++m) {
        const Constellation c = dyadic_gaussian_constellation(m, 1.0);
        c.validate();
        CHECK(c.dyadic);
        CHECK(c.average_power() == doctest::Approx(1.0).epsilon(1e-9));
        const double unit = std::exp2(-m);
        for (double w : c.probs) {
            CHECK(std::fabs(w / unit - std::round(w / unit)) <= 1e-9);
        }
    }

    // Mutual information is non-decreasing in m at fixed snr.
    double last = 0.0;
    for (int m = 1; m <= 8; ++m) {
        const double mi = mi_discrete_awgn(dyadic_gaussian_constellation(m, 1.0), 1.0, 1e-8);
        CHECK(mi >= last - 1e-7);
        last = mi;
    }
}

TEST_CASE("quadrature construction invariants") {
    for (int m = 1; m <= 8; ++m) {
        const Constellation c = gauss_quadrature_constellation(m, 1.0);
        c.validate();
        CHECK_FALSE(c.dyadic);
        CHECK(static_cast<int>(c.points.size()) == (1 << m));
        double mass = 0.0;
        for (double w : c.probs) mass += w;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.average_power() == doctest::Approx(1.0).epsilon(1e-9));
    }
    const Constellation two = gauss_quadrature_constellation(1, 1.0);
    CHECK(two.points[0] == doctest::Approx(-1.0));
    CHECK(two.points[1] == doctest::Approx(1.0));
}

TEST_CASE("quadrature beats the dyadic constellation at m = 3") {
    const double snr = 1.0;
    const double v = 1.0 / snr;
    const double c = awgn_capacity(snr);
    const double quad = mi_discrete_awgn(gauss_quadrature_constellation(3, snr), v, 1e-9);
    const double dyad = mi_discrete_awgn(dyadic_gaussian_constellation(3, snr), v, 1e-9);
    CHECK(c - quad < c - dyad);
    CHECK(quad >= dyad);
}
