#pragma once

#include <cstdint>

namespace laprox {

namespace detail {

// SplitMix64 finalizer; full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

} // namespace detail

// Deterministic pseudo-random stream addressed by (master seed, stream index).
//
// The state is xoshiro256** expanded from both address words through a
// SplitMix64 chain, so distinct (seed, index) pairs start in unrelated states
// while identical pairs replay the exact same draw sequence on every platform
// and thread count. Estimators assign one stream per Monte Carlo sample.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t x = master_seed ^ detail::mix64(stream_index ^ 0x9e3779b97f4a7c15ULL);
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            word = detail::mix64(x);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x9e3779b97f4a7c15ULL; // all-zero state is the one xoshiro fixed point
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound); bound >= 1. Lemire's multiply-reject
    // scheme, exactly uniform.
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound; // 2^64 mod bound
            while (low < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_[4];
};

inline RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    return RngStream(master_seed, stream_index);
}

} // namespace laprox
