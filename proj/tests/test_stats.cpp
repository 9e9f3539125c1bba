#include <doctest.h>

#include <cmath>

#include "qconv/latin.hpp"
#include "qconv/stats.hpp"

using namespace qconv;

TEST_CASE("entanglement sampling") {
    SUBCASE("identity produces zeros") {
        const auto s = sample_entanglement(ComplexMatrix::identity(9), 200, 3);
        for (double v : s.values) CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("fixed seed is bit-stable") {
        const auto squares = mols(3);
        const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
        const auto a = sample_entanglement(p9, 500, 7);
        const auto b = sample_entanglement(p9, 500, 7);
        CHECK(a.values == b.values);
    }
    SUBCASE("P9 sample mean matches e_p (d-1)/(d+1) = 1/2") {
        const auto squares = mols(3);
        const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
        const auto s = sample_entanglement(p9, 10000, 11);
        double mean = 0.0, var = 0.0;
        for (double v : s.values) mean += v;
        mean /= s.values.size();
        for (double v : s.values) var += (v - mean) * (v - mean);
        var /= s.values.size();
        const double se = std::sqrt(var / s.values.size());
        CHECK(std::abs(mean - 0.5) < 3.0 * se);
        for (double v : s.values) {
            CHECK(v > -1e-12);
            CHECK(v < 1.0 - 1.0 / 3.0 + 1e-12);
        }
    }
}

TEST_CASE("ks test basics") {
    SUBCASE("identical samples") {
        std::vector<double> x = {0.1, 0.5, 0.9, 0.3};
        const auto res = ks_two_sample(x, x);
        CHECK(res.statistic == 0.0);
        CHECK(res.p_value == doctest::Approx(1.0));
    }
    SUBCASE("statistic is symmetric and invariant under monotone maps") {
        Rng rng(5);
        std::vector<double> x(400), y(400);
        for (auto& v : x) v = rng.uniform01();
        for (auto& v : y) v = rng.uniform01() * rng.uniform01();
        const auto xy = ks_two_sample(x, y);
        const auto yx = ks_two_sample(y, x);
        CHECK(xy.statistic == doctest::Approx(yx.statistic).epsilon(1e-15));
        auto cube = [](std::vector<double> v) {
            for (auto& t : v) t = t * t * t;
            return v;
        };
        const auto transformed = ks_two_sample(cube(x), cube(y));
        CHECK(transformed.statistic == doctest::Approx(xy.statistic).epsilon(1e-15));
    }
    SUBCASE("empty input is refused") {
        CHECK_THROWS_AS(ks_two_sample({}, {0.5}), InputError);
    }
    SUBCASE("kolmogorov survival function endpoints") {
        CHECK(kolmogorov_q(0.0) == 1.0);
        CHECK(kolmogorov_q(10.0) < 1e-80);
        CHECK(kolmogorov_q(0.8) > 0.5);
    }
}

TEST_CASE("null calibration at moderate size stays near the nominal level") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
    int rejections = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        const auto a = sample_entanglement(p9, 2000, 1000 + 2 * t);
        const auto b = sample_entanglement(p9, 2000, 1001 + 2 * t);
        if (ks_two_sample(a.values, b.values).p_value < 0.05) ++rejections;
    }
    CHECK(rejections <= 8);  // ~2 expected at the 5% level
}

TEST_CASE("histogram") {
    const std::vector<double> v = {0.05, 0.15, 0.15, 0.95};
    const auto h = histogram(v, 0.0, 1.0, 10);
    CHECK(h.counts[0] == 1);
    CHECK(h.counts[1] == 2);
    CHECK(h.counts[9] == 1);
}
