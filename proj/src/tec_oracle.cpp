#include "tecrep/tec_oracle.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "tecrep/rng.hpp"

namespace tecrep {

namespace {

double binomial_se(double hat, std::uint64_t n) {
    if (n == 0) return 0.0;
    return std::sqrt(hat * (1.0 - hat) / static_cast<double>(n));
}

constexpr std::uint64_t kBlockTrials = 1u << 16;

struct Tally {
    std::uint64_t samples = 0, conclusive = 0, x_errors = 0, z_errors = 0;
    void operator+=(const Tally& other) {
        samples += other.samples;
        conclusive += other.conclusive;
        x_errors += other.x_errors;
        z_errors += other.z_errors;
    }
};

/// Encode a survivor-count histogram as an index key.  Row survivor
/// counts live in 0..m, so base (n+1) digits per count are enough.
std::uint64_t class_key(const std::vector<int>& u, int lost_rows, int n) {
    std::uint64_t key = static_cast<std::uint64_t>(lost_rows);
    for (auto it = u.rbegin(); it != u.rend(); ++it)
        key = key * static_cast<std::uint64_t>(n + 1) +
              static_cast<std::uint64_t>(*it);
    return key;
}

void run_block(const CodeParams& code, const ChannelParams& channel,
               std::uint64_t trials, std::uint64_t block_seed,
               std::vector<Tally>& tallies,
               const std::unordered_map<std::uint64_t, std::size_t>& index) {
    Xoshiro256pp rng(block_seed);
    const int n = code.n;
    const int m = code.m;
    const double eta = channel.eta_eff();
    const double e = channel.e;
    std::vector<int> u(static_cast<std::size_t>(m), 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::fill(u.begin(), u.end(), 0);
        int lost_rows = 0;
        int x_sum = 0;
        int z_prod = 1;
        bool z_draw = false;
        for (int i = 0; i < n; ++i) {
            int survivors = 0;
            int z_sum = 0;
            for (int j = 0; j < m; ++j) {
                if (rng.bernoulli(eta)) {
                    ++survivors;
                    z_sum += rng.bernoulli(e) ? -1 : 1;
                }
            }
            if (survivors == 0) {
                ++lost_rows;
            } else {
                ++u[static_cast<std::size_t>(m - survivors)];
            }
            if (survivors == m) {
                // complete rows cast an X vote: their parity, flipped by
                // an odd number of outcome errors
                int flips = 0;
                for (int j = 0; j < m; ++j)
                    if (rng.bernoulli(e)) ++flips;
                x_sum += (flips % 2 == 0) ? 1 : -1;
            }
            if (z_sum == 0)
                z_draw = true;
            else if (z_sum < 0)
                z_prod = -z_prod;
        }
        const bool conclusive = x_sum != 0 && !z_draw;
        Tally& tally = tallies[index.at(class_key(u, lost_rows, n))];
        ++tally.samples;
        if (conclusive) {
            ++tally.conclusive;
            if (x_sum < 0) ++tally.x_errors;
            if (z_prod < 0) ++tally.z_errors;
        }
    }
}

}  // namespace

double OracleEstimate::q_hat() const {
    return samples ? static_cast<double>(conclusive) / static_cast<double>(samples)
                   : 0.0;
}
double OracleEstimate::q_se() const { return binomial_se(q_hat(), samples); }
double OracleEstimate::ex_hat() const {
    return conclusive
               ? static_cast<double>(x_errors) / static_cast<double>(conclusive)
               : 0.0;
}
double OracleEstimate::ex_se() const { return binomial_se(ex_hat(), conclusive); }
double OracleEstimate::ez_hat() const {
    return conclusive
               ? static_cast<double>(z_errors) / static_cast<double>(conclusive)
               : 0.0;
}
double OracleEstimate::ez_se() const { return binomial_se(ez_hat(), conclusive); }

OracleRun simulate_station(const CodeParams& code, const ChannelParams& channel,
                           std::uint64_t trials, std::uint64_t seed,
                           int workers) {
    if (trials < 1) throw std::invalid_argument("simulate_station: trials < 1");

    const std::vector<PatternClass> classes = enumerate_classes(code);
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t c = 0; c < classes.size(); ++c)
        index.emplace(class_key(classes[c].u, classes[c].lost_rows, code.n), c);

    const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::vector<Tally>> block_tallies(
        blocks, std::vector<Tally>(classes.size()));

    auto block_size = [&](std::uint64_t b) {
        return b + 1 < blocks ? kBlockTrials : trials - b * kBlockTrials;
    };

    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    std::atomic<std::uint64_t> next_block{0};
    auto worker_fn = [&] {
        for (std::uint64_t b = next_block.fetch_add(1); b < blocks;
             b = next_block.fetch_add(1))
            run_block(code, channel, block_size(b), derive_seed(seed, b),
                      block_tallies[b], index);
    };
    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    // merge in block order; counts are integers so the result is
    // independent of how blocks were scheduled
    std::vector<Tally> merged(classes.size());
    for (std::uint64_t b = 0; b < blocks; ++b)
        for (std::size_t c = 0; c < classes.size(); ++c)
            merged[c] += block_tallies[b][c];

    OracleRun run{code, channel, trials, seed, kRngName, {}, 0};
    run.per_class.reserve(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        OracleEstimate est;
        est.u = classes[c].u;
        est.lost_rows = classes[c].lost_rows;
        est.acceptable = classes[c].acceptable;
        est.samples = merged[c].samples;
        est.conclusive = merged[c].conclusive;
        est.x_errors = merged[c].x_errors;
        est.z_errors = merged[c].z_errors;
        run.conclusive_total += est.conclusive;
        run.per_class.push_back(std::move(est));
    }
    return run;
}

namespace {

/// z-score of `hat` (from n trials) against null proportion p.
double null_z(double hat, double p, std::uint64_t n) {
    if (n == 0) return 0.0;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    if (se == 0.0)
        return hat == p ? 0.0 : std::numeric_limits<double>::infinity();
    return (hat - p) / se;
}

/// Two-sided tail probability of k successes in n Bernoulli(p) trials.
/// Normal approximation once the variance supports it; exact sums from
/// the observed count otherwise, so the 3-sigma rule stays calibrated on
/// classes that draws visit only a handful of times.
double binomial_two_sided_tail(std::uint64_t n, std::uint64_t k, double p) {
    if (n == 0) return 1.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    const double mean = static_cast<double>(n) * p;
    const double var = mean * (1.0 - p);
    if (var > 25.0) {
        const double z = (static_cast<double>(k) - mean) / std::sqrt(var);
        return std::erfc(std::abs(z) / std::sqrt(2.0));
    }
    const double log_pk = log_factorial(n) - log_factorial(k) -
                          log_factorial(n - k) +
                          static_cast<double>(k) * std::log(p) +
                          static_cast<double>(n - k) * std::log1p(-p);
    const double pk = std::exp(log_pk);
    double lower = pk, term = pk;
    for (std::uint64_t j = k; j > 0; --j) {
        term *= static_cast<double>(j) / static_cast<double>(n - j + 1) *
                (1.0 - p) / p;
        lower += term;
        if (term < lower * 1e-15) break;
    }
    double upper = pk;
    term = pk;
    for (std::uint64_t j = k; j < n; ++j) {
        term *= static_cast<double>(n - j) / static_cast<double>(j + 1) * p /
                (1.0 - p);
        upper += term;
        if (term < upper * 1e-15) break;
    }
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

// two-sided probability mass beyond 3 standard errors of a normal
constexpr double kAlpha3Sigma = 0.0026997960632601866;

}  // namespace

ComparisonReport compare_with_analytic(const StationTable& table,
                                       const OracleRun& run) {
    if (!(table.code == run.code) || !(table.channel == run.channel))
        throw std::invalid_argument("compare_with_analytic: parameter mismatch");
    if (run.trials == 0)
        throw std::invalid_argument("compare_with_analytic: zero-trial input");

    ComparisonReport report;
    report.x_draw = table.x_draw;

    // analytic values come from the table itself: the row error pair, and
    // the conclusive rate recovered as w over the bare pattern probability
    const std::vector<PatternClass> classes = enumerate_classes(table.code);
    const double eta = table.channel.eta_eff();
    const int np = table.code.n_p();
    for (const StationStats& row : table.rows) {
        const PatternClass* cls = nullptr;
        for (const PatternClass& cand : classes)
            if (cand.lost_rows == 0 && cand.u == row.u) {
                cls = &cand;
                break;
            }
        if (cls == nullptr)
            throw std::invalid_argument("compare_with_analytic: unknown class row");
        const OracleEstimate* est = nullptr;
        for (const OracleEstimate& cand : run.per_class)
            if (cand.lost_rows == 0 && cand.u == row.u) {
                est = &cand;
                break;
            }
        if (est == nullptr || est->samples == 0) continue;  // class never drawn

        const double pattern_prob =
            cls->omega.convert_to<double>() *
            pow_int(eta, static_cast<std::uint64_t>(np - cls->n_lp)) *
            pow_int(1.0 - eta, static_cast<std::uint64_t>(cls->n_lp));

        ClassComparison cmp;
        cmp.u = row.u;
        cmp.samples = est->samples;
        cmp.conclusive = est->conclusive;
        cmp.q_analytic = row.w / pattern_prob;
        cmp.q_hat = est->q_hat();
        cmp.z_q = null_z(cmp.q_hat, cmp.q_analytic, est->samples);
        cmp.p_q =
            binomial_two_sided_tail(est->samples, est->conclusive, cmp.q_analytic);
        cmp.ex_analytic = row.err.ex;
        cmp.ex_hat = est->ex_hat();
        cmp.z_ex = null_z(cmp.ex_hat, cmp.ex_analytic, est->conclusive);
        cmp.p_ex = binomial_two_sided_tail(est->conclusive, est->x_errors,
                                           cmp.ex_analytic);
        cmp.ez_analytic = row.err.ez;
        cmp.ez_hat = est->ez_hat();
        cmp.z_ez = null_z(cmp.ez_hat, cmp.ez_analytic, est->conclusive);
        cmp.p_ez = binomial_two_sided_tail(est->conclusive, est->z_errors,
                                           cmp.ez_analytic);
        cmp.flagged = cmp.p_q < kAlpha3Sigma || cmp.p_ex < kAlpha3Sigma ||
                      cmp.p_ez < kAlpha3Sigma;
        report.max_abs_z =
            std::max({report.max_abs_z, std::abs(cmp.z_q), std::abs(cmp.z_ex),
                      std::abs(cmp.z_ez)});
        report.min_p_value =
            std::min({report.min_p_value, cmp.p_q, cmp.p_ex, cmp.p_ez});
        if (cmp.flagged) report.all_within_3sigma = false;
        report.rows.push_back(std::move(cmp));
    }

    report.p0_analytic = table.p0;
    report.p0_hat = static_cast<double>(run.conclusive_total) /
                    static_cast<double>(run.trials);
    report.z_p0 = null_z(report.p0_hat, report.p0_analytic, run.trials);
    const double p0_tail = binomial_two_sided_tail(
        run.trials, run.conclusive_total, report.p0_analytic);
    report.max_abs_z = std::max(report.max_abs_z, std::abs(report.z_p0));
    report.min_p_value = std::min(report.min_p_value, p0_tail);
    if (p0_tail < kAlpha3Sigma) report.all_within_3sigma = false;
    return report;
}

}  // namespace tecrep
