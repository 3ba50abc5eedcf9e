#pragma once

#include <cstdint>
#include <random>

namespace locrad {

/// SplitMix64 output function applied to a single word.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of stream `stream` for replication `index` of an experiment:
///   mix64(mix64(master ^ (0x9E3779B97F4A7C15 * (stream + 1))) + index).
/// Counter-based, so replications can run in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream) noexcept;

inline constexpr std::uint64_t kSampleStream = 0;
inline constexpr std::uint64_t kSignStream = 1;
inline constexpr std::uint64_t kMonteCarloStream = 2;

/// Portable random source. The engine sequence is fixed by the standard, and
/// the conversions below avoid the implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// +1 or -1 with probability 1/2.
    int sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

private:
    std::mt19937_64 engine_;
};

}  // namespace locrad
