#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tecrep/tec_oracle.hpp"

using namespace tecrep;

TEST_CASE("oracle is deterministic given the seed") {
    const CodeParams code(2, 2);
    const ChannelParams ch(0.8, 0.01);
    const OracleRun a = simulate_station(code, ch, 50000, 99);
    const OracleRun b = simulate_station(code, ch, 50000, 99);
    REQUIRE(a.per_class.size() == b.per_class.size());
    for (std::size_t i = 0; i < a.per_class.size(); ++i) {
        CHECK(a.per_class[i].samples == b.per_class[i].samples);
        CHECK(a.per_class[i].conclusive == b.per_class[i].conclusive);
        CHECK(a.per_class[i].x_errors == b.per_class[i].x_errors);
        CHECK(a.per_class[i].z_errors == b.per_class[i].z_errors);
    }
    const OracleRun c = simulate_station(code, ch, 50000, 100);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.per_class.size(); ++i)
        if (a.per_class[i].conclusive != c.per_class[i].conclusive)
            any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("tallies are independent of the worker count") {
    const CodeParams code(3, 2);
    const ChannelParams ch(0.9, 0.02);
    // enough trials for several work blocks
    const OracleRun a = simulate_station(code, ch, 300000, 7, 1);
    const OracleRun b = simulate_station(code, ch, 300000, 7, 4);
    REQUIRE(a.per_class.size() == b.per_class.size());
    for (std::size_t i = 0; i < a.per_class.size(); ++i) {
        CHECK(a.per_class[i].samples == b.per_class[i].samples);
        CHECK(a.per_class[i].conclusive == b.per_class[i].conclusive);
        CHECK(a.per_class[i].x_errors == b.per_class[i].x_errors);
        CHECK(a.per_class[i].z_errors == b.per_class[i].z_errors);
    }
}

TEST_CASE("zero physical error: conclusive trials are error-free") {
    const CodeParams code(2, 2);
    const ChannelParams ch(0.9, 0.0);
    const OracleRun run = simulate_station(code, ch, 200000, 3);
    for (const OracleEstimate& est : run.per_class) {
        CHECK(est.x_errors == 0);
        CHECK(est.z_errors == 0);
        // without flips every acceptable pattern is conclusive,
        // and no unacceptable one ever is
        if (est.acceptable)
            CHECK(est.conclusive == est.samples);
        else
            CHECK(est.conclusive == 0);
    }
    // aggregate conclusive fraction sits near the analytic p0 = 0.9477
    const double frac = static_cast<double>(run.conclusive_total) /
                        static_cast<double>(run.trials);
    const double se = std::sqrt(0.9477 * (1 - 0.9477) / 200000.0);
    CHECK(std::abs(frac - 0.9477) < 3.0 * se);
}

TEST_CASE("conclusiveness implies acceptability at finite error too") {
    const CodeParams code(2, 3);
    const ChannelParams ch(0.7, 0.05);
    const OracleRun run = simulate_station(code, ch, 100000, 21);
    for (const OracleEstimate& est : run.per_class)
        if (!est.acceptable) CHECK(est.conclusive == 0);
}

TEST_CASE("compare_with_analytic: agreement, mismatch, and guards") {
    const CodeParams code(2, 2);
    const ChannelParams ch(0.9, 0.01);
    const OracleRun run = simulate_station(code, ch, 400000, 4242);

    const StationTable good =
        build_station_table(code, ch, XDrawModel::parity_fidelity);
    const ComparisonReport ok = compare_with_analytic(good, run);
    CHECK(ok.all_within_3sigma);
    CHECK(ok.max_abs_z < 3.0);
    CHECK(ok.rows.size() == 2);

    // a perturbed table must be flagged
    StationTable bent = good;
    bent.rows[1].err = ErrorPair(bent.rows[1].err.ez + 0.02,
                                 bent.rows[1].err.ex);
    const ComparisonReport bad = compare_with_analytic(bent, run);
    CHECK(!bad.all_within_3sigma);
    CHECK(bad.max_abs_z > 3.0);

    // the raw-qubit draw model disagrees with the simulated protocol
    const StationTable literal =
        build_station_table(code, ch, XDrawModel::qubit_rate);
    const ComparisonReport adjudicated = compare_with_analytic(literal, run);
    CHECK(!adjudicated.all_within_3sigma);
    CHECK(adjudicated.max_abs_z > ok.max_abs_z);

    // parameter mismatch and empty runs are rejected
    const StationTable other =
        build_station_table(code, ChannelParams(0.8, 0.01));
    CHECK_THROWS_AS((void)compare_with_analytic(other, run),
                    std::invalid_argument);
    OracleRun empty = run;
    empty.trials = 0;
    CHECK_THROWS_AS((void)compare_with_analytic(good, empty),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)simulate_station(code, ch, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("oracle standard errors follow the binomial form") {
    OracleEstimate est;
    est.samples = 400;
    est.conclusive = 100;
    est.x_errors = 25;
    CHECK(est.q_hat() == doctest::Approx(0.25));
    CHECK(est.q_se() == doctest::Approx(std::sqrt(0.25 * 0.75 / 400.0)));
    CHECK(est.ex_hat() == doctest::Approx(0.25));
    CHECK(est.ex_se() == doctest::Approx(std::sqrt(0.25 * 0.75 / 100.0)));
}
