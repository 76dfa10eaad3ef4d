#include "tecrep/chain.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "tecrep/rng.hpp"

namespace tecrep {

const char* to_string(RateMethod method) {
    switch (method) {
        case RateMethod::cg: return "cg";
        case RateMethod::fg_exact: return "fg-exact";
        case RateMethod::fg_multinomial: return "fg-multinomial";
        case RateMethod::fg_monte_carlo: return "fg-monte-carlo";
    }
    return "?";
}

namespace {

double per_mode(const ChainSpec& spec, double k) {
    return k / (2.0 * spec.table.code.n_p());
}

double key_bracket(double ez, double ex) {
    return std::max(1.0 - binary_entropy(ez) - binary_entropy(ex), 0.0);
}

}  // namespace

RateResult cg_rate(const ChainSpec& spec) {
    const double qn = iterate_error(spec.table.e0, spec.n_stations);
    const double k = pow_int(spec.table.p0, spec.n_stations) *
                     std::max(1.0 - 2.0 * binary_entropy(qn), 0.0);
    return {k, per_mode(spec, k), RateMethod::cg, {}, {}, {}};
}

RateResult fg_rate_exact(const ChainSpec& spec, const ChainCaps& caps) {
    const std::size_t l = spec.table.rows.size();
    const double terms =
        std::pow(static_cast<double>(l), static_cast<double>(spec.n_stations));
    if (!(terms <= caps.exact_terms))
        throw CapExceeded(
            "fg_rate_exact: l^N exceeds the term cap; use fg_rate_multinomial "
            "or fg_rate_monte_carlo");

    const auto& rows = spec.table.rows;
    double key = 0.0;
    // depth-first over outcome sequences with running (w, ez, ex)
    auto rec = [&](auto&& self, std::uint64_t depth, double w, double ez,
                   double ex) -> void {
        if (depth == spec.n_stations) {
            key += w * key_bracket(ez, ex);
            return;
        }
        for (const StationStats& row : rows)
            self(self, depth + 1, w * row.w, compose_errors(ez, row.err.ez),
                 compose_errors(ex, row.err.ex));
    };
    rec(rec, 0, 1.0, 0.0, 0.0);
    return {key, per_mode(spec, key), RateMethod::fg_exact, {}, {}, {}};
}

double multinomial_term_count(std::uint64_t n_stations, std::size_t l) {
    // C(N+l-1, l-1); l is small so the product form is fine
    double count = 1.0;
    for (std::size_t i = 1; i < l; ++i) {
        count *= static_cast<double>(n_stations + i) / static_cast<double>(i);
        if (count > 1e300) return std::numeric_limits<double>::infinity();
    }
    return count;
}

RateResult fg_rate_multinomial(const ChainSpec& spec, const ChainCaps& caps) {
    const auto& rows = spec.table.rows;
    const std::size_t l = rows.size();
    const std::uint64_t n = spec.n_stations;
    if (!(multinomial_term_count(n, l) <= caps.multinomial_terms))
        throw CapExceeded(
            "fg_rate_multinomial: C(N+l-1,l-1) exceeds the term cap; use "
            "fg_rate_monte_carlo");

    std::vector<double> log_w(l), az(l), ax(l);
    for (std::size_t i = 0; i < l; ++i) {
        log_w[i] = rows[i].w > 0.0 ? std::log(rows[i].w)
                                   : -std::numeric_limits<double>::infinity();
        az[i] = 1.0 - 2.0 * rows[i].err.ez;
        ax[i] = 1.0 - 2.0 * rows[i].err.ex;
    }
    const double log_n_fact = log_factorial(n);

    double key = 0.0;
    // counts assigned outermost-first; weights in log space since the
    // multinomial coefficients overflow doubles for large N
    // c * log_w must skip the c == 0 case: zero-weight rows carry -inf
    auto count_log_w = [&](std::size_t i, std::uint64_t c) {
        return c == 0 ? 0.0 : static_cast<double>(c) * log_w[i];
    };
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left,
                   double log_w_partial, double pz, double px) -> void {
        if (i + 1 == l) {
            if (left > 0 && rows[i].w <= 0.0) return;
            const double lw =
                log_w_partial + count_log_w(i, left) - log_factorial(left);
            const double weight = std::exp(log_n_fact + lw);
            const double ez = (1.0 - pz * pow_int(az[i], left)) / 2.0;
            const double ex = (1.0 - px * pow_int(ax[i], left)) / 2.0;
            key += weight * key_bracket(ez, ex);
            return;
        }
        for (std::uint64_t c = 0; c <= left; ++c) {
            if (c > 0 && rows[i].w <= 0.0) break;
            self(self, i + 1, left - c,
                 log_w_partial + count_log_w(i, c) - log_factorial(c),
                 pz * pow_int(az[i], c), px * pow_int(ax[i], c));
        }
    };
    rec(rec, 0, n, 0.0, 1.0, 1.0);
    return {key, per_mode(spec, key), RateMethod::fg_multinomial, {}, {}, {}};
}

namespace {

constexpr std::uint64_t kBlockSamples = 4096;

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

RateResult fg_rate_monte_carlo(const ChainSpec& spec, std::uint64_t samples,
                               std::uint64_t seed, int workers) {
    if (samples < 1)
        throw std::invalid_argument("fg_rate_monte_carlo: samples < 1");
    const auto& rows = spec.table.rows;
    const std::size_t l = rows.size();
    const std::uint64_t n = spec.n_stations;
    const double p0 = spec.table.p0;

    std::vector<double> probs(l), az(l), ax(l);
    for (std::size_t i = 0; i < l; ++i) {
        probs[i] = rows[i].w / p0;
        az[i] = 1.0 - 2.0 * rows[i].err.ez;
        ax[i] = 1.0 - 2.0 * rows[i].err.ex;
    }

    const std::uint64_t blocks = (samples + kBlockSamples - 1) / kBlockSamples;
    std::vector<BlockMoments> block_moments(blocks);
    auto block_size = [&](std::uint64_t b) {
        return b + 1 < blocks ? kBlockSamples : samples - b * kBlockSamples;
    };

    auto run_block = [&](std::uint64_t b) {
        Xoshiro256pp rng(derive_seed(seed, b));
        std::vector<std::uint64_t> counts(l);
        BlockMoments moments;
        const std::uint64_t todo = block_size(b);
        for (std::uint64_t s = 0; s < todo; ++s) {
            sample_multinomial(n, probs, counts, rng);
            double pz = 1.0, px = 1.0;
            for (std::size_t i = 0; i < l; ++i) {
                if (counts[i] == 0) continue;
                pz *= pow_int(az[i], counts[i]);
                px *= pow_int(ax[i], counts[i]);
            }
            const double value = key_bracket((1.0 - pz) / 2.0, (1.0 - px) / 2.0);
            moments.sum += value;
            moments.sum_sq += value * value;
        }
        block_moments[b] = moments;
    };

    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || blocks == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker_fn = [&] {
            for (std::uint64_t b = next.fetch_add(1); b < blocks;
                 b = next.fetch_add(1))
                run_block(b);
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    // reduce in block order for a schedule-independent result
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockMoments& moments : block_moments) {
        sum += moments.sum;
        sum_sq += moments.sum_sq;
    }
    const double count = static_cast<double>(samples);
    const double mean = sum / count;
    const double var =
        samples > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0))
                    : 0.0;
    const double scale = pow_int(p0, n);
    RateResult result{scale * mean, 0.0, RateMethod::fg_monte_carlo,
                      scale * std::sqrt(var / count), samples, seed};
    result.r_per_mode = per_mode(spec, result.k_logical);
    return result;
}

RateMethod pick_fg_method(const ChainSpec& spec, const ChainCaps& caps) {
    const std::size_t l = spec.table.rows.size();
    const double exact_terms =
        std::pow(static_cast<double>(l), static_cast<double>(spec.n_stations));
    if (exact_terms <= caps.exact_terms) return RateMethod::fg_exact;
    if (multinomial_term_count(spec.n_stations, l) <= caps.multinomial_terms)
        return RateMethod::fg_multinomial;
    return RateMethod::fg_monte_carlo;
}

}  // namespace tecrep
