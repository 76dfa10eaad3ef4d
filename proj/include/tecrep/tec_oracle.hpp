#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tecrep/station.hpp"

namespace tecrep {

/// Monte Carlo tallies for one pattern class.
struct OracleEstimate {
    std::vector<int> u;
    int lost_rows = 0;
    bool acceptable = false;
    std::uint64_t samples = 0;     // trials classified here
    std::uint64_t conclusive = 0;  // both logical outcomes assignable
    std::uint64_t x_errors = 0;    // among conclusive trials
    std::uint64_t z_errors = 0;

    double q_hat() const;
    double q_se() const;
    double ex_hat() const;
    double ex_se() const;
    double ez_hat() const;
    double ez_se() const;
};

/// Result of a bit-level station simulation.  Trials are processed in
/// fixed blocks, each with an independently derived sub-seed, so tallies
/// do not depend on the worker count.
struct OracleRun {
    CodeParams code;
    ChannelParams channel;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
    std::vector<OracleEstimate> per_class;  // all classes, lex order of u
    std::uint64_t conclusive_total = 0;
};

OracleRun simulate_station(const CodeParams& code, const ChannelParams& channel,
                           std::uint64_t trials, std::uint64_t seed,
                           int workers = 1);

struct ClassComparison {
    std::vector<int> u;
    std::uint64_t samples = 0;
    std::uint64_t conclusive = 0;
    double q_analytic = 0.0, q_hat = 0.0, z_q = 0.0, p_q = 1.0;
    double ex_analytic = 0.0, ex_hat = 0.0, z_ex = 0.0, p_ex = 1.0;
    double ez_analytic = 0.0, ez_hat = 0.0, z_ez = 0.0, p_ez = 1.0;
    bool flagged = false;  // some statistic outside its 3-sigma band
};

struct ComparisonReport {
    XDrawModel x_draw;
    double max_abs_z = 0.0;     // raw normal z, diagnostic only
    double min_p_value = 1.0;   // smallest two-sided tail probability
    bool all_within_3sigma = true;
    double p0_analytic = 0.0, p0_hat = 0.0, z_p0 = 0.0;
    std::vector<ClassComparison> rows;
};

/// Per-class comparison of the table's statistics against the simulated
/// tallies.  The conclusive rate is recovered from each row as w over the
/// bare pattern probability; errors come from the row's pair.  A
/// statistic is flagged when its two-sided binomial tail falls below the
/// 3-sigma mass 0.0027; the test is exact for low-expectation tallies and
/// the usual null-z otherwise, so rarely-visited classes do not trip the
/// gate spuriously.
ComparisonReport compare_with_analytic(const StationTable& table,
                                       const OracleRun& run);

}  // namespace tecrep
