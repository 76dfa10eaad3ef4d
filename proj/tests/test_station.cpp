#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tecrep/json_io.hpp"
#include "tecrep/rng.hpp"
#include "tecrep/station.hpp"

using namespace tecrep;

namespace {

const PatternClass& find_class(const std::vector<PatternClass>& classes,
                               const std::vector<int>& u) {
    for (const auto& cls : classes)
        if (cls.lost_rows == 0 && cls.u == u) return cls;
    throw std::logic_error("class not found");
}

// explicit subset sum over even error counts, the slow route
double even_error_subset_sum(const std::vector<double>& fidelity) {
    const std::size_t n = fidelity.size();
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        double term = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            term *= (mask >> i) & 1u ? 1.0 - fidelity[i] : fidelity[i];
        total += term;
    }
    return total;
}

}  // namespace

TEST_CASE("subblock_parity_fidelity") {
    CHECK(subblock_parity_fidelity(2, 0.0) == 1.0);
    CHECK(subblock_parity_fidelity(2, 0.01) ==
          doctest::Approx(0.9802).epsilon(1e-14));
    CHECK(subblock_parity_fidelity(3, 0.01) ==
          doctest::Approx(0.970596).epsilon(1e-13));
    CHECK_THROWS_AS((void)subblock_parity_fidelity(0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)subblock_parity_fidelity(2, 0.5),
                    std::invalid_argument);
}

TEST_CASE("x_error_stats: single voter, two voters under both draw models") {
    const CodeParams code(2, 2);
    const auto classes = enumerate_classes(code);
    const PatternClass& one_full = find_class(classes, {1, 1});
    const PatternClass& both_full = find_class(classes, {2, 0});

    // a single voter never draws and never errs at e = 0
    XStats s = x_error_stats(one_full, code, 0.0);
    CHECK(s.p_conc == 1.0);
    CHECK(s.err == 0.0);

    // odd voter counts never draw, either model
    s = x_error_stats(one_full, code, 0.01, XDrawModel::parity_fidelity);
    CHECK(s.p_conc == 1.0);
    CHECK(s.err == doctest::Approx(2 * 0.01 * 0.99).epsilon(1e-13));
    CHECK(x_error_stats(one_full, code, 0.01, XDrawModel::qubit_rate).p_conc ==
          1.0);

    // two voters, e = 0.01: frozen values from the closed forms
    s = x_error_stats(both_full, code, 0.01, XDrawModel::parity_fidelity);
    CHECK(s.p_conc == doctest::Approx(0.96118408).epsilon(1e-13));
    CHECK(s.err == doctest::Approx(0.00040787192397103263).epsilon(1e-10));

    s = x_error_stats(both_full, code, 0.01, XDrawModel::qubit_rate);
    CHECK(s.p_conc == doctest::Approx(0.9802).epsilon(1e-13));
    CHECK(s.err == doctest::Approx(0.0198).epsilon(1e-12));

    // unacceptable classes are rejected
    const PatternClass& bad = find_class(classes, {0, 2});
    CHECK_THROWS_AS((void)x_error_stats(bad, code, 0.01), std::invalid_argument);
}

TEST_CASE("z_error_stats: lossless block, mixed survivors") {
    const CodeParams code(2, 2);
    const auto classes = enumerate_classes(code);

    ZStats s = z_error_stats(find_class(classes, {2, 0}), code, 0.0);
    CHECK(s.p_conc == 1.0);
    CHECK(s.err == 0.0);

    s = z_error_stats(find_class(classes, {2, 0}), code, 0.01);
    CHECK(s.p_conc == doctest::Approx(0.96079204).epsilon(1e-13));
    CHECK(s.err == doctest::Approx(0.00020401917567924865).epsilon(1e-10));

    s = z_error_stats(find_class(classes, {1, 1}), code, 0.01);
    CHECK(s.p_conc == doctest::Approx(0.9802).epsilon(1e-13));
    CHECK(s.err == doctest::Approx(0.010099979596000841).epsilon(1e-12));
}

TEST_CASE("two-voter parity arithmetic and the closed product form") {
    CHECK(parity_fidelity_product({0.9, 0.8}) ==
          doctest::Approx(0.74).epsilon(1e-15));

    Xoshiro256pp rng(5);
    for (int n = 1; n <= 8; ++n)
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> fidelity(static_cast<std::size_t>(n));
            for (double& f : fidelity) f = rng.uniform01();
            CHECK(parity_fidelity_product(fidelity) ==
                  doctest::Approx(even_error_subset_sum(fidelity))
                      .epsilon(1e-12));
        }
}

TEST_CASE("conclusive_rate: zero-error limit and conventions") {
    const CodeParams code(2, 2);
    const auto classes = enumerate_classes(code);
    CHECK(conclusive_rate(find_class(classes, {2, 0}), code, 0.0) == 1.0);
    CHECK(conclusive_rate(find_class(classes, {1, 1}), code, 0.0) == 1.0);

    // unacceptable patterns contribute zero, no throw
    for (const auto& cls : classes)
        if (!cls.acceptable) CHECK(conclusive_rate(cls, code, 0.01) == 0.0);

    CHECK(conclusive_rate(find_class(classes, {2, 0}), code, 0.01,
                          XDrawModel::parity_fidelity) ==
          doctest::Approx(0.923498013038723).epsilon(1e-13));
    CHECK(conclusive_rate(find_class(classes, {2, 0}), code, 0.01,
                          XDrawModel::qubit_rate) ==
          doctest::Approx(0.9417683576079999).epsilon(1e-13));
}

TEST_CASE("build_station_table: (2,2) eta0=0.9 e=0 reference point") {
    const CodeParams code(2, 2);
    const ChannelParams ch(0.9, 0.0);
    const StationTable table = build_station_table(code, ch);
    REQUIRE(table.rows.size() == 2);
    // lex order: (1,1) then (2,0)
    CHECK(table.rows[0].u == std::vector<int>{1, 1});
    CHECK(table.rows[0].w == doctest::Approx(0.2916).epsilon(1e-14));
    CHECK(table.rows[1].u == std::vector<int>{2, 0});
    CHECK(table.rows[1].w == doctest::Approx(0.6561).epsilon(1e-14));
    CHECK(table.p0 == doctest::Approx(0.9477).epsilon(1e-14));
    CHECK(table.e0 == 0.0);
    for (const auto& row : table.rows) {
        CHECK(row.err.ez == 0.0);
        CHECK(row.err.ex == 0.0);
    }
    // station success probability exceeds the bare transmission
    CHECK(table.p0 > ch.eta0);
}

TEST_CASE("station table invariants over the parameter grid") {
    for (const auto& [n, m] : {std::pair{2, 2}, {3, 2}, {3, 3}})
        for (const double e : {0.0, 1e-3, 1e-2, 0.1})
            for (const double eta0 : {0.8, 0.9, 0.97})
                for (const XDrawModel model :
                     {XDrawModel::parity_fidelity, XDrawModel::qubit_rate}) {
                    const CodeParams code(n, m);
                    const ChannelParams ch(eta0, e);
                    const StationTable table = build_station_table(code, ch, model);
                    double sum = 0.0;
                    for (const auto& row : table.rows) {
                        CHECK(row.w >= 0.0);
                        CHECK(row.err.ez >= 0.0);
                        CHECK(row.err.ez <= 0.5);
                        CHECK(row.err.ex >= 0.0);
                        CHECK(row.err.ex <= 0.5);
                        sum += row.w;
                    }
                    CHECK(sum <= 1.0 + 1e-12);
                    CHECK(table.p0 == doctest::Approx(sum).epsilon(1e-14));
                    CHECK(table.p0 > 0.0);
                    CHECK(table.e0 >= 0.0);
                    CHECK(table.e0 <= 0.5);
                }
}

TEST_CASE("e=0 weights reduce to the bare pattern probabilities") {
    const CodeParams code(3, 2);
    const ChannelParams ch(0.85, 0.0);
    const StationTable table = build_station_table(code, ch);
    double expected_p0 = 0.0;
    for (const auto& cls : enumerate_classes(code)) {
        if (!cls.acceptable) continue;
        expected_p0 += cls.omega.convert_to<double>() *
                       pow_int(0.85, static_cast<std::uint64_t>(6 - cls.n_lp)) *
                       pow_int(0.15, static_cast<std::uint64_t>(cls.n_lp));
    }
    CHECK(table.p0 == doctest::Approx(expected_p0).epsilon(1e-14));
    // and the weight sum approaches one as losses and errors vanish
    const StationTable nearly =
        build_station_table(code, ChannelParams(0.9999, 0.0));
    CHECK(nearly.p0 > 0.999);
}

TEST_CASE("single_station_key: zero-error limit equals p0") {
    const CodeParams code(2, 2);
    const ChannelParams ch(0.9, 0.0);
    CHECK(single_station_key(code, ch) ==
          doctest::Approx(build_station_table(code, ch).p0).epsilon(1e-15));
    // frozen value at e = 5e-4
    CHECK(single_station_key(code, ChannelParams(0.9, 5e-4)) ==
          doctest::Approx(0.939638924120056).epsilon(1e-13));
}

TEST_CASE("x-draw model names round-trip") {
    CHECK(x_draw_from_string("parity-fidelity") == XDrawModel::parity_fidelity);
    CHECK(x_draw_from_string("qubit-rate") == XDrawModel::qubit_rate);
    CHECK_THROWS_AS((void)x_draw_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("station table JSON round-trip") {
    const CodeParams code(3, 2);
    const ChannelParams ch(0.9, 1e-3, 0.98);
    const StationTable table =
        build_station_table(code, ch, XDrawModel::qubit_rate);
    const StationTable back = station_table_from_json(to_json(table));
    CHECK(back.code == table.code);
    CHECK(back.channel == table.channel);
    CHECK(back.x_draw == table.x_draw);
    CHECK(back.p0 == table.p0);
    CHECK(back.e0 == table.e0);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(back.rows[i].u == table.rows[i].u);
        CHECK(back.rows[i].w == table.rows[i].w);
        CHECK(back.rows[i].err.ez == table.rows[i].err.ez);
        CHECK(back.rows[i].err.ex == table.rows[i].err.ex);
    }
}
