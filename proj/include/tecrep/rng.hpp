#pragma once

#include <cstdint>
#include <span>

namespace tecrep {

/// splitmix64 step; used for seeding and for deriving per-block streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent sub-seed for work block `stream` of a run seeded by `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

/// xoshiro256++ (Blackman & Vigna). Small, fast, and fully specified, so
/// runs are reproducible from the recorded seed alone.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

inline constexpr const char* kRngName = "xoshiro256++";

/// Binomial(n, p) draw by inversion started at the mode, so the expected
/// work is O(sqrt(n p (1-p))) rather than O(n p).
std::uint64_t sample_binomial(std::uint64_t n, double p, Xoshiro256pp& rng);

/// Multinomial(n, probs) via sequential binomial conditioning.  `probs`
/// must sum to 1 (up to rounding); counts land in `out`.
void sample_multinomial(std::uint64_t n, std::span<const double> probs,
                        std::span<std::uint64_t> out, Xoshiro256pp& rng);

}  // namespace tecrep
