#include "spikeslab/estimators.hpp"

#include "spikeslab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace spikeslab;

TEST_CASE("hard thresholding") {
    CHECK(hard_threshold(std::vector<double>{3.0, 0.5}) == std::vector<double>{3.0, 0.0});
    CHECK(hard_threshold(std::vector<double>(9, 0.0)) == std::vector<double>(9, 0.0));
    const double t = std::sqrt(2.0 * std::log(4.0));
    CHECK(hard_threshold(std::vector<double>{t, -t, std::nextafter(t, 10.0), -std::nextafter(t, 10.0)}) ==
          std::vector<double>{0.0, 0.0, std::nextafter(t, 10.0), -std::nextafter(t, 10.0)});
    CHECK_THROWS_AS(hard_threshold(std::vector<double>{5.0}), std::invalid_argument);
}

TEST_CASE("oracle hard thresholding") {
    std::vector<double> x(500, 0.0);
    x[0] = 1.7940;
    x[1] = 1.7942;
    x[2] = -2.5;
    // sqrt(2 log 5) = 1.794122...
    const auto y = hard_threshold_oracle(x, 100);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 1.7942);
    CHECK(y[2] == -2.5);

    // p_n = n - 1: threshold sqrt(2 log(n/(n-1))) = 0.1418 at n = 100
    std::vector<double> z(100, 0.2);
    z[3] = -0.15;
    z[7] = 0.14;
    auto kept = z;
    kept[7] = 0.0;
    CHECK(hard_threshold_oracle(z, 99) == kept);

    std::vector<double> spike(20, 0.0);
    spike[0] = 5.0;
    for (int p : {1, 4, 19}) CHECK(hard_threshold_oracle(spike, p) == spike);

    CHECK_THROWS_AS(hard_threshold_oracle(z, 100), std::invalid_argument);
    CHECK_THROWS_AS(hard_threshold_oracle(z, 0), std::invalid_argument);
}

TEST_CASE("oracle threshold never exceeds the universal one") {
    CounterRng rng(4);
    for (int n : {2, 10, 500, 10000})
        for (int p = 1; p < std::min(n, 60); ++p) CHECK(std::log(double(n) / p) <= std::log(double(n)));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(100);
        for (double& v : x) v = 3.0 * rng.normal();
        const auto ht = hard_threshold(x);
        const auto hto = hard_threshold_oracle(x, 1 + static_cast<int>(rng.below(99)));
        for (std::size_t i = 0; i < x.size(); ++i)
            if (ht[i] != 0.0) CHECK(hto[i] == ht[i]);
    }
}

TEST_CASE("d_q loss") {
    const std::vector<double> a{1.0, 2.0}, zero{0.0, 0.0};
    CHECK(dq_loss(a, zero, LossSpec(1.0)) == 3.0);
    CHECK(dq_loss(a, zero, LossSpec(2.0)) == 5.0);
    CHECK(dq_loss(a, a, LossSpec(0.5)) == 0.0);
    CHECK(dq_loss(a, zero, LossSpec(0.5)) == doctest::Approx(1.0 + std::sqrt(2.0)));
    CHECK_THROWS_AS(dq_loss(a, std::vector<double>{1.0}, LossSpec(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(LossSpec(0.0), std::invalid_argument);
    CHECK_THROWS_AS(LossSpec(2.5), std::invalid_argument);
    CHECK_THROWS_AS(LossSpec(NAN), std::invalid_argument);
}

TEST_CASE("d_q symmetry, permutation invariance and the triangle inequality") {
    CounterRng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(12));
        std::vector<double> a(n), b(n), c(n);
        for (int i = 0; i < n; ++i) a[i] = 3.0 * rng.normal(), b[i] = 3.0 * rng.normal(), c[i] = 3.0 * rng.normal();
        const double q = 0.05 + 1.95 * rng.uniform();
        const LossSpec spec(q);
        CHECK(dq_loss(a, b, spec) == dq_loss(b, a, spec));

        std::vector<double> pa(a.rbegin(), a.rend()), pb(b.rbegin(), b.rend());
        CHECK(dq_loss(pa, pb, spec) == doctest::Approx(dq_loss(a, b, spec)).epsilon(1e-14));

        if (q <= 1.0) CHECK(dq_loss(a, c, spec) <= dq_loss(a, b, spec) + dq_loss(b, c, spec) + 1e-12);
    }
}
