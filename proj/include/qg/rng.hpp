#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qg {

/// Deterministic 64-bit generator (SplitMix64; Steele, Lea, Flood 2014).
/// The constants below are part of the key-file contract: the same seed has
/// to reproduce the same key on every platform and implementation, so no
/// library engine (std::mt19937 etc.) is used anywhere in key generation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Draw from [0, bound) by modulo reduction. bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        return next() % bound;
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by the generator above.
template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[rng.next_below(i)]);
    }
}

} // namespace qg
