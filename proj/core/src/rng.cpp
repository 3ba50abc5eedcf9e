#include "locrad/rng.hpp"

namespace locrad {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream) noexcept {
    return mix64(mix64(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) + index);
}

}  // namespace locrad
