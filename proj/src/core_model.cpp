#include "tecrep/core_model.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tecrep {

CodeParams::CodeParams(int n_, int m_) : n(n_), m(m_) {
    if (n < 2 || m < 2)
        throw std::invalid_argument("CodeParams: need n >= 2 and m >= 2");
}

ChannelParams::ChannelParams(double eta0_, double e_, double eta_c_,
                             double l_att_km_)
    : eta0(eta0_), e(e_), eta_c(eta_c_), l_att_km(l_att_km_) {
    if (!(eta0 > 0.0 && eta0 < 1.0))
        throw std::invalid_argument("ChannelParams: eta0 must lie in (0,1)");
    if (!(e >= 0.0 && e < 0.5))
        throw std::invalid_argument("ChannelParams: e must lie in [0,0.5)");
    if (!(eta_c > 0.0 && eta_c <= 1.0))
        throw std::invalid_argument("ChannelParams: eta_c must lie in (0,1]");
    if (!(l_att_km > 0.0))
        throw std::invalid_argument("ChannelParams: l_att_km must be positive");
}

double ChannelParams::unit_distance_km() const {
    return -l_att_km * std::log(eta0);
}

ErrorPair::ErrorPair(double ez_, double ex_) : ez(ez_), ex(ex_) {
    if (!(ez >= 0.0 && ez <= 0.5 && ex >= 0.0 && ex <= 0.5))
        throw std::invalid_argument("ErrorPair: rates must lie in [0,1/2]");
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    const double y = 1.0 - x;
    if (x <= 0.0 || y <= 0.0) return 0.0;
    return -x * std::log2(x) - y * std::log2(y);
}

double compose_errors(double e1, double e2) {
    if (!(e1 >= 0.0 && e1 <= 1.0 && e2 >= 0.0 && e2 <= 1.0))
        throw std::domain_error("compose_errors: arguments outside [0,1]");
    return e1 * (1.0 - e2) + e2 * (1.0 - e1);
}

double iterate_error(double e0, std::uint64_t n) {
    if (!(e0 >= 0.0 && e0 <= 1.0))
        throw std::domain_error("iterate_error: e0 outside [0,1]");
    return (1.0 - pow_int(1.0 - 2.0 * e0, n)) / 2.0;
}

double pow_int(double base, std::uint64_t n) {
    double acc = 1.0;
    double b = base;
    while (n > 0) {
        if (n & 1u) acc *= b;
        b *= b;
        n >>= 1u;
    }
    return acc;
}

BigInt binomial(std::uint64_t a, std::int64_t b) {
    if (b < 0 || static_cast<std::uint64_t>(b) > a) return 0;
    std::uint64_t k = static_cast<std::uint64_t>(b);
    if (k > a - k) k = a - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= a - k + i;
        r /= i;  // exact: r is a binomial coefficient at every step
    }
    return r;
}

namespace {
constexpr std::size_t kLogFactTable = 1u << 16;
std::vector<double> g_log_fact;
std::once_flag g_log_fact_once;
}  // namespace

double log_factorial(std::uint64_t k) {
    std::call_once(g_log_fact_once, [] {
        g_log_fact.resize(kLogFactTable);
        for (std::size_t i = 0; i < kLogFactTable; ++i)
            g_log_fact[i] = std::lgamma(static_cast<double>(i) + 1.0);
    });
    if (k < kLogFactTable) return g_log_fact[k];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace tecrep
