#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "tecrep/station.hpp"

namespace tecrep {

/// A uniform chain: N segment-and-station pairs sharing one station table.
struct ChainSpec {
    StationTable table;
    std::uint64_t n_stations;

    ChainSpec(StationTable table_, std::uint64_t n_stations_)
        : table(std::move(table_)), n_stations(n_stations_) {
        if (n_stations < 1)
            throw std::invalid_argument("ChainSpec: need at least one station");
    }
};

enum class RateMethod {
    cg,
    fg_exact,
    fg_multinomial,
    fg_monte_carlo,
};

const char* to_string(RateMethod method);

struct RateResult {
    double k_logical = 0.0;   // key per logical-qubit slot
    double r_per_mode = 0.0;  // k_logical / (2 n m)
    RateMethod method = RateMethod::cg;
    std::optional<double> std_err;       // of k_logical, Monte Carlo only
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
};

/// Enumeration budgets.  Exact enumeration covers l^N outcome sequences;
/// the multinomial reduction covers C(N+l-1, l-1) count vectors.
struct ChainCaps {
    double exact_terms = 1e7;
    double multinomial_terms = 1e7;
};

/// Raised when a requested method would exceed its enumeration cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coarse-grained rate from (P0, E0) alone; the clamp acts on the
/// aggregate.
RateResult cg_rate(const ChainSpec& spec);

/// Full sum over the l^N outcome sequences, errors chained pairwise.
RateResult fg_rate_exact(const ChainSpec& spec, const ChainCaps& caps = {});

/// Sum over outcome multisets with multinomial weights; equal to the
/// exact sum, exponentially cheaper for small l.
RateResult fg_rate_multinomial(const ChainSpec& spec, const ChainCaps& caps = {});

/// Monte Carlo estimate: samples count vectors, clamps per sample, and
/// reports a standard error.  Deterministic for a given seed and
/// independent of the worker count.
RateResult fg_rate_monte_carlo(const ChainSpec& spec, std::uint64_t samples,
                               std::uint64_t seed, int workers = 1);

/// Cheapest applicable fine-grained method under the caps.
RateMethod pick_fg_method(const ChainSpec& spec, const ChainCaps& caps = {});

/// Number of count vectors C(N+l-1, l-1) as a double (inf if huge).
double multinomial_term_count(std::uint64_t n_stations, std::size_t l);

}  // namespace tecrep
