#pragma once

#include "locrad/concept_class.hpp"
#include "locrad/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace locrad {

enum class DistributionKind { uniform_cube, piecewise_1d };

/// Sampling distribution P with closed-form measures of intervals and boxes.
///
/// Piecewise densities are constant on [b_i, b_{i+1}) for breakpoints
/// 0 = b_0 < ... < b_k = 1 and are normalized to integrate to one.
class DistributionSpec {
public:
    static DistributionSpec uniform(std::size_t dim = 1);
    /// Throws InvalidArgument for bad breakpoints, negative or all-zero
    /// densities, or a declared bound B violating B^-1 <= p <= B.
    static DistributionSpec piecewise(std::vector<double> breakpoints, std::vector<double> densities,
                                      std::optional<double> density_bound = std::nullopt);

    DistributionKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    /// Normalized densities.
    const std::vector<double>& densities() const noexcept { return density_; }
    std::optional<double> density_bound() const noexcept { return bound_; }

    /// Distribution function of a one-dimensional P.
    double cdf(double x) const;
    double quantile(double p) const;

    double probability(const Interval& c) const;
    double probability(const Box& c) const;

private:
    DistributionSpec() = default;

    DistributionKind kind_ = DistributionKind::uniform_cube;
    std::size_t dim_ = 1;
    std::vector<double> breaks_;
    std::vector<double> density_;
    std::vector<double> mass_below_;
    std::optional<double> bound_;
};

/// n i.i.d. points from P; deterministic in `seed`.
Sample draw_sample(const DistributionSpec& dist, std::size_t n, std::uint64_t seed);

}  // namespace locrad
