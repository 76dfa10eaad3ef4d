#include "tecrep/rng.hpp"

#include <cmath>

#include "tecrep/core_model.hpp"

namespace tecrep {

std::uint64_t sample_binomial(std::uint64_t n, double p, Xoshiro256pp& rng) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;

    const double nd = static_cast<double>(n);
    const auto mode = static_cast<std::uint64_t>(
        std::min(nd, std::floor((nd + 1.0) * p)));
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double md = static_cast<double>(mode);
    double pmf_mode = std::exp(log_factorial(n) - log_factorial(mode) -
                               log_factorial(n - mode) + md * log_p +
                               (nd - md) * log_q);

    double u = rng.uniform01();
    if (u < pmf_mode) return mode;
    u -= pmf_mode;

    // walk outward, greedily taking the heavier side first
    const double ratio = p / (1.0 - p);
    double pmf_lo = pmf_mode;
    double pmf_hi = pmf_mode;
    std::uint64_t lo = mode;       // next value below is lo-1
    std::uint64_t hi = mode;       // next value above is hi+1
    while (lo > 0 || hi < n) {
        const double next_lo =
            lo > 0 ? pmf_lo * static_cast<double>(lo) /
                         (static_cast<double>(n - lo + 1) * ratio)
                   : -1.0;
        const double next_hi =
            hi < n ? pmf_hi * static_cast<double>(n - hi) /
                         (static_cast<double>(hi + 1)) * ratio
                   : -1.0;
        if (next_lo >= next_hi) {
            --lo;
            pmf_lo = next_lo;
            if (u < pmf_lo) return lo;
            u -= pmf_lo;
        } else {
            ++hi;
            pmf_hi = next_hi;
            if (u < pmf_hi) return hi;
            u -= pmf_hi;
        }
    }
    return mode;  // rounding tail; probability ~ machine epsilon
}

void sample_multinomial(std::uint64_t n, std::span<const double> probs,
                        std::span<std::uint64_t> out, Xoshiro256pp& rng) {
    std::uint64_t remaining = n;
    double mass = 1.0;
    const std::size_t l = probs.size();
    for (std::size_t i = 0; i + 1 < l; ++i) {
        double cond = mass > 0.0 ? probs[i] / mass : 1.0;
        if (cond > 1.0) cond = 1.0;
        const std::uint64_t draw = sample_binomial(remaining, cond, rng);
        out[i] = draw;
        remaining -= draw;
        mass -= probs[i];
    }
    out[l - 1] = remaining;
}

}  // namespace tecrep
