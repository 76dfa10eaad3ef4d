#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tecrep/core_model.hpp"
#include "tecrep/rng.hpp"

using namespace tecrep;

TEST_CASE("binary entropy: boundary convention and known values") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.25) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-13));
    CHECK(binary_entropy(0.25) == binary_entropy(0.75));
    CHECK_THROWS_AS((void)binary_entropy(-1e-9), std::domain_error);
    CHECK_THROWS_AS((void)binary_entropy(1.0 + 1e-9), std::domain_error);
}

TEST_CASE("binary entropy is concave on a sampled grid") {
    Xoshiro256pp rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform01();
        const double y = rng.uniform01();
        const double mid = binary_entropy((x + y) / 2.0);
        CHECK(mid >= (binary_entropy(x) + binary_entropy(y)) / 2.0 - 1e-12);
    }
}

TEST_CASE("compose_errors: identities and arithmetic") {
    CHECK(compose_errors(0.0, 0.3) == 0.3);
    CHECK(compose_errors(0.5, 0.0) == 0.5);
    CHECK(compose_errors(0.5, 0.47) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(compose_errors(0.1, 0.2) == doctest::Approx(0.26).epsilon(1e-15));
    CHECK_THROWS_AS((void)compose_errors(-0.1, 0.2), std::domain_error);
    CHECK_THROWS_AS((void)compose_errors(0.1, 1.2), std::domain_error);
}

TEST_CASE("compose_errors is commutative and associative") {
    Xoshiro256pp rng(12);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform01();
        const double b = rng.uniform01();
        const double c = rng.uniform01();
        CHECK(compose_errors(a, b) ==
              doctest::Approx(compose_errors(b, a)).epsilon(1e-12));
        CHECK(compose_errors(compose_errors(a, b), c) ==
              doctest::Approx(compose_errors(a, compose_errors(b, c)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("iterate_error equals the left fold of compose_errors") {
    CHECK(iterate_error(0.37, 0) == 0.0);
    CHECK(iterate_error(0.37, 1) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(iterate_error(0.01, 10) ==
          doctest::Approx(0.09146359655622666).epsilon(1e-13));

    for (const double e0 : {0.0, 1e-4, 0.01, 0.1, 0.5}) {
        double folded = e0;
        std::uint64_t folds = 1;
        for (const std::uint64_t n : {2ull, 5ull, 17ull, 100ull, 1000ull}) {
            while (folds < n) {
                folded = compose_errors(folded, e0);
                ++folds;
            }
            CHECK(std::abs(iterate_error(e0, n) - folded) < 1e-12);
        }
    }
    CHECK_THROWS_AS((void)iterate_error(1.5, 3), std::domain_error);
}

TEST_CASE("binomial: examples, out-of-range zeros, exactness") {
    CHECK(binomial(4, 1) == 4);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(12, 6) == 924);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("binomial satisfies Pascal's rule exactly") {
    for (std::uint64_t a = 1; a <= 25; ++a)
        for (std::int64_t b = 0; b <= static_cast<std::int64_t>(a); ++b)
            CHECK(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
}

TEST_CASE("pow_int") {
    CHECK(pow_int(0.5, 3) == 0.125);
    CHECK(pow_int(-1.0, 5) == -1.0);
    CHECK(pow_int(0.77, 0) == 1.0);
    CHECK(pow_int(0.9, 210) == doctest::Approx(std::pow(0.9, 210)).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(CodeParams(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(CodeParams(2, 1), std::invalid_argument);
    CHECK(CodeParams(3, 4).n_p() == 12);

    CHECK_THROWS_AS(ChannelParams(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.9, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.9, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.9, 0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ChannelParams(0.9, 0.0, 1.0, 0.0), std::invalid_argument);

    const ChannelParams ch(0.9, 1e-3, 0.98, 20.0);
    CHECK(ch.eta_eff() == doctest::Approx(0.882).epsilon(1e-15));
    CHECK(ch.unit_distance_km() ==
          doctest::Approx(-20.0 * std::log(0.9)).epsilon(1e-15));

    CHECK_THROWS_AS(ErrorPair(0.6, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ErrorPair(0.0, -0.1), std::invalid_argument);
}
