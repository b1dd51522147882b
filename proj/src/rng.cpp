#include "tabkit/rng.hpp"

#include <algorithm>
#include <numeric>

namespace tabkit {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    SplitMix64 rng(seed);
    fisher_yates(indices, rng);
    return indices;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> indices = shuffled_indices(n, seed);
    indices.resize(std::min(k, n));
    std::sort(indices.begin(), indices.end());
    return indices;
}

}  // namespace tabkit
