#pragma once

#include <cmath>
#include <cstdint>

namespace ouspec {

// SplitMix64 finalizer, used as the trial-index hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xorshift64* (Marsaglia xorshift with a multiplicative output scramble).
// State must be nonzero; a zero seed is replaced by a fixed constant.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dULL;
    }

    /// Uniform double in (0, 1].
    double u01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Standard Gaussian via Box-Muller (no cached spare, keeps streams simple).
    double gauss() {
        const double u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

// Per-trial substream: seed XOR trial-index hash.
inline Xorshift64Star trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return Xorshift64Star(seed ^ splitmix64(trial));
}

} // namespace ouspec
