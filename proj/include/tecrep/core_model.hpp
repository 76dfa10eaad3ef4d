#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace tecrep {

/// Exact arbitrary-precision integer used for all combinatorial counts.
using BigInt = boost::multiprecision::cpp_int;

/// Block code layout: n sub-blocks (rows) of m photonic qubits each.
struct CodeParams {
    int n;
    int m;

    CodeParams(int n_, int m_);

    /// Physical qubits per logical qubit.
    int n_p() const { return n * m; }

    bool operator==(const CodeParams&) const = default;
};

/// Per-segment channel description. `e` is the symmetric physical flip
/// rate (bit and phase alike); `eta_c` is the per-station coupling
/// efficiency, which degrades the effective transmission but not the
/// fiber length a segment stands for.
struct ChannelParams {
    double eta0;
    double e;
    double eta_c;
    double l_att_km;

    explicit ChannelParams(double eta0_, double e_, double eta_c_ = 1.0,
                           double l_att_km_ = 20.0);

    double eta_eff() const { return eta_c * eta0; }
    double unit_distance_km() const;

    bool operator==(const ChannelParams&) const = default;
};

/// Logical bit/phase error rates of one syndrome outcome.
struct ErrorPair {
    double ez = 0.0;
    double ex = 0.0;

    ErrorPair() = default;
    ErrorPair(double ez_, double ex_);
};

/// Binary entropy h(x) in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Series combination of two binary symmetric channels:
/// G(e1,e2) = e1(1-e2) + e2(1-e1).
double compose_errors(double e1, double e2);

/// n-fold series combination of identical BSCs: (1 - (1-2e0)^n)/2.
double iterate_error(double e0, std::uint64_t n);

/// Integer power by squaring (deterministic across platforms).
double pow_int(double base, std::uint64_t n);

/// Exact binomial coefficient; 0 when b < 0 or b > a.
BigInt binomial(std::uint64_t a, std::int64_t b);

/// ln(k!) from a cached table (exact lgamma per entry).
double log_factorial(std::uint64_t k);

}  // namespace tecrep
