#pragma once

#include <cstdint>
#include <cmath>

namespace seqtest {

// Counter-addressed random stream. Every draw is a pure function of
// (seed, stream, path, counter), so a path's draws can be evaluated in any
// order, skipped, or recomputed and the ensemble stays bit-identical no
// matter how work is split across threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t path) {
        key_ = mix(mix(seed + kGamma * (stream + 1)) ^ mix(path + 0x6a09e667f3bcc909ULL));
    }

    // Uniform on (0,1), endpoints excluded.
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(word(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (cosine branch); consumes counters c, c+1.
    double normal(std::uint64_t counter) const {
        const double u1 = uniform(counter);
        const double u2 = uniform(counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    bool bernoulli(double p, std::uint64_t counter) const {
        return uniform(counter) < p;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr double kTwoPi = 6.283185307179586476925286766559;

    // splitmix64 finalizer; two rounds below give a well-mixed keyed sequence.
    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t word(std::uint64_t counter) const {
        return mix(mix(key_ + kGamma * counter));
    }

    std::uint64_t key_;
};

// Stream tags keep independent sampling tasks on disjoint substreams.
namespace rng_stream {
inline constexpr std::uint64_t kConditionalPaths = 1;
inline constexpr std::uint64_t kUnconditionalPaths = 2;
inline constexpr std::uint64_t kHittingTheta0 = 3;
inline constexpr std::uint64_t kHittingTheta1 = 4;
inline constexpr std::uint64_t kResidualLower = 5;
inline constexpr std::uint64_t kResidualUpper = 6;
}

} // namespace seqtest
