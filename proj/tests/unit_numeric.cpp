#include "evatlas/errors.hpp"
#include "evatlas/numeric.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace evatlas;

TEST_CASE("normal quantile matches the bisection oracle across the domain") {
    std::vector<double> grid;
    for (double p = 1e-9; p < 0.5; p *= 3.7)
        grid.push_back(p);
    for (double p = 0.02; p < 1.0; p += 0.017)
        grid.push_back(p);
    for (double p : {0.025, 0.05, 0.5, 0.95, 0.975, 0.995, 0.9985, 1.0 - 1e-9})
        grid.push_back(p);

    for (double p : grid) {
        const double got = normal_quantile(p);
        const double want = oracles::normal_quantile_bisect(p);
        CAPTURE(p);
        CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
}

TEST_CASE("normal quantile frozen reference points") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-14));
    CHECK(normal_quantile(0.9985) == doctest::Approx(2.967737925341794).epsilon(1e-14));
    CHECK(normal_quantile(0.5) == 0.0);
}

TEST_CASE("normal quantile is antisymmetric and monotone") {
    for (double p : {0.001, 0.01, 0.1, 0.25, 0.4, 0.49}) {
        CHECK(normal_quantile(p) ==
              doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-12));
        CHECK(normal_quantile(p) < 0.0);
    }
    double prev = normal_quantile(1e-7);
    for (double p = 1e-4; p < 1.0; p += 1e-3) {
        const double cur = normal_quantile(p);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("normal quantile rejects arguments outside (0, 1)") {
    CHECK_THROWS_AS(normal_quantile(0.0), ConfigError);
    CHECK_THROWS_AS(normal_quantile(1.0), ConfigError);
    CHECK_THROWS_AS(normal_quantile(-0.5), ConfigError);
    CHECK_THROWS_AS(normal_quantile(2.0), ConfigError);
    CHECK_THROWS_AS(normal_quantile(std::nan("")), ConfigError);
}

TEST_CASE("coverage critical value") {
    CHECK(coverage_z(0.95) == normal_quantile(0.975));
    CHECK(coverage_z(0.99) == normal_quantile(0.995));
    CHECK_THROWS_AS(coverage_z(0.0), ConfigError);
    CHECK_THROWS_AS(coverage_z(1.0), ConfigError);
}
