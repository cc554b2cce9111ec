#include <doctest.h>

#include <cmath>

#include "polarshape/dmc.hpp"
#include "polarshape/errors.hpp"
#include "polarshape/pmf.hpp"

using namespace polarshape;

TEST_CASE("builtin channel tables") {
    const Dmc bsc = builtin_channel("bsc", {0.11});
    CHECK(bsc.w(0, 0) == doctest::Approx(0.89));
    CHECK(bsc.w(0, 1) == doctest::Approx(0.11));
    CHECK(bsc.w(1, 0) == doctest::Approx(0.11));
    CHECK(bsc.w(1, 1) == doctest::Approx(0.89));

    const Dmc bec = builtin_channel("bec", {0.5});
    CHECK(bec.output_size() == 3);
    CHECK(bec.w(0, 2) == doctest::Approx(0.5));
    CHECK(bec.w(1, 2) == doctest::Approx(0.5));
    CHECK(bec.w(0, 1) == 0.0);

    const Dmc z = builtin_channel("zchannel", {0.3});
    CHECK(z.w(0, 0) == 1.0);
    CHECK(z.w(1, 0) == doctest::Approx(0.3));
    CHECK(z.w(1, 1) == doctest::Approx(0.7));

    CHECK_THROWS_AS(builtin_channel("bsc", {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_channel("bsc", {1.5}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_channel("nope", {}), std::invalid_argument);
    CHECK_THROWS_AS(Dmc({0.5, 0.4}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("mutual information closed forms") {
    const Dmc noiseless = make_bsc(0.0);
    CHECK(mutual_information(noiseless, 0.5) == doctest::Approx(1.0));

    const Dmc bsc = make_bsc(0.11);
    CHECK(mutual_information(bsc, 0.5) == doctest::Approx(1.0 - binary_entropy(0.11)));

    // Z-channel direct 2x2 sum: I = H(Y) - p H_b(0.3) with P(y=1) = 0.7 p.
    const Dmc z = make_zchannel(0.3);
    const double p = 0.4;
    const double expect = binary_entropy(0.7 * p) - p * binary_entropy(0.3);
    CHECK(mutual_information(z, p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mutual information is concave on a grid for each builtin") {
    for (const Dmc& ch : {make_bsc(0.11), make_bec(0.4), make_zchannel(0.3),
                          builtin_channel("asymmetric", {0.7, 0.2, 0.1, 0.05, 0.15, 0.8})}) {
        std::vector<double> val(101);
        for (int i = 0; i <= 100; ++i) val[i] = mutual_information(ch, i / 100.0);
        for (int i = 1; i < 100; ++i) {
            CHECK(val[i] >= 0.5 * (val[i - 1] + val[i + 1]) - 1e-12);
        }
    }
}

TEST_CASE("optimal input on symmetric channels is uniform") {
    for (const Dmc& ch : {make_bsc(0.11), make_bec(0.5)}) {
        const ChannelInfo info = optimal_input(ch, 1e-9);
        CHECK(info.optimal_p == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(mutual_information(ch, info.optimal_p) >= info.capacity - 1e-9);
    }
    const ChannelInfo noiseless = optimal_input(make_bsc(0.0), 1e-9);
    CHECK(noiseless.capacity == doctest::Approx(1.0));
    CHECK(noiseless.optimal_p == doctest::Approx(0.5));
}

TEST_CASE("optimal input matches a grid search on the z-channel") {
    const Dmc z = make_zchannel(0.5);
    const ChannelInfo info = optimal_input(z, 1e-10);
    double best_p = 0.0, best_i = -1.0;
    for (int i = 0; i <= 100000; ++i) {
        const double p = i * 1e-5;
        const double mi = mutual_information(z, p);
        if (mi > best_i) { best_i = mi; best_p = p; }
    }
    CHECK(info.capacity == doctest::Approx(best_i).epsilon(1e-8));
    CHECK(info.optimal_p == doctest::Approx(best_p).epsilon(1e-3));

    // Golden-section over p agrees within 2 tol.
    double lo = 0.0, hi = 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    while (hi - lo > 1e-12) {
        if (mutual_information(z, c) < mutual_information(z, d)) lo = c; else hi = d;
        c = hi - gr * (hi - lo);
        d = lo + gr * (hi - lo);
    }
    CHECK(info.capacity == doctest::Approx(mutual_information(z, 0.5 * (lo + hi))).epsilon(2e-10));
}

TEST_CASE("optimal input local optimality invariant") {
    for (const Dmc& ch : {make_zchannel(0.3), builtin_channel("asymmetric", {0.7, 0.2, 0.1, 0.05, 0.15, 0.8})}) {
        const ChannelInfo info = optimal_input(ch, 1e-9);
        const double at = mutual_information(ch, info.optimal_p);
        for (double dp : {-0.01, 0.01}) {
            const double q = info.optimal_p + dp;
            if (q >= 0.0 && q <= 1.0) CHECK(mutual_information(ch, q) <= at + 1e-9);
        }
    }
}

TEST_CASE("useless channel resolves to the smallest optimal p") {
    const Dmc useless({0.5, 0.5}, {0.5, 0.5});
    const ChannelInfo info = optimal_input(useless, 1e-9);
    CHECK(info.capacity == doctest::Approx(0.0));
    CHECK(info.optimal_p == 0.0);
}

TEST_CASE("transmit is deterministic and hits the right flip rate") {
    const Dmc noiseless = make_bsc(0.0);
    BitBlock x{0, 1, 1, 0, 1, 0, 0, 1};
    RandomStream s1(5, {stream_purpose::kChannelNoise, 0, 0});
    const std::vector<int> y = transmit(noiseless, x, s1);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == x[i]);

    RandomStream s2(5, {stream_purpose::kChannelNoise, 1, 0});
    RandomStream s3(5, {stream_purpose::kChannelNoise, 1, 0});
    const Dmc bsc = make_bsc(0.11);
    BitBlock zeros(1 << 20, 0);
    const std::vector<int> y2 = transmit(bsc, zeros, s2);
    const std::vector<int> y3 = transmit(bsc, zeros, s3);
    CHECK(y2 == y3);
    long flips = 0;
    for (int v : y2) flips += v;
    CHECK(static_cast<double>(flips) / zeros.size() == doctest::Approx(0.11).epsilon(0.01));
}

TEST_CASE("transmit histogram approaches the exact output law") {
    const Dmc bec = make_bec(0.4);
    const int n = 200000;
    BitBlock x(n);
    RandomStream bits(9, {stream_purpose::kMessage, 0, 0});
    for (int i = 0; i < n; ++i) x[i] = bits.next_bit();
    RandomStream s(9, {stream_purpose::kChannelNoise, 2, 0});
    const std::vector<int> y = transmit(bec, x, s);
    std::vector<double> hist(3, 0.0);
    for (int v : y) hist[v] += 1.0 / n;
    const std::vector<double> exact = bec.output_distribution(0.5);
    CHECK(variational_distance(hist, exact) <= 3.0 * std::sqrt(3.0 / n));
}
