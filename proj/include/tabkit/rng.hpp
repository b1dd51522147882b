#pragma once
#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace tabkit {

// Deterministic 64-bit generator. The same seed yields the same stream on
// every platform, so seeded sampling, splits and bootstraps can be frozen
// as cross-implementation goldens.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 usable bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// In-place Fisher-Yates: i runs from n-1 down to 1, j = next() mod (i+1).
template <typename T>
void fisher_yates(std::vector<T>& items, SplitMix64& rng) {
    if (items.size() < 2) return;
    for (std::size_t i = items.size() - 1; i >= 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
        std::swap(items[i], items[j]);
    }
}

// 0..n-1 shuffled with SplitMix64(seed).
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

// min(k, n) distinct indices drawn by a full shuffle, returned ascending.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace tabkit
