#pragma once

#include "locrad/concept_class.hpp"
#include "locrad/distribution.hpp"
#include "locrad/restriction.hpp"
#include "locrad/sample.hpp"

#include <cstdint>
#include <span>

namespace locrad {

/// Smallest closed interval containing every positive point (empty if none).
/// Throws InconsistentLabels when a negative point lies inside that hull.
Interval minimal_interval_learner(const Sample& sample, std::span<const double> labels);

/// Consistent interval with the largest true risk against `target`. Open
/// feasible ends are approached to within one ulp, so the returned risk is
/// the supremum up to rounding. Scans all endpoint pairs from the candidate
/// set {0, 1, t_lo, t_hi, X_(i), ulp-neighbours of X_(i)}.
Interval worst_consistent_interval(const Sample& sample, std::span<const double> labels,
                                   const Interval& target, const DistributionSpec& dist);

/// Lowest index of a vector that vanishes on the sample.
std::uint64_t pick_any_consistent(const SampledRestriction& reduced);

struct TrueRisk {
    double value = 0.0;
    double std_error = 0.0;  ///< zero for closed-form results
};

/// P(estimate xor target), exact.
TrueRisk true_risk(const Interval& estimate, const Interval& target, const DistributionSpec& dist);
/// Exact under the uniform cube.
TrueRisk true_risk(const Box& estimate, const Box& target, const DistributionSpec& dist);

/// Monte Carlo estimate of P(estimate xor target) from `points` draws.
TrueRisk true_risk_monte_carlo(const TargetSpec::Member& estimate, const TargetSpec::Member& target,
                               const DistributionSpec& dist, std::size_t points = 1'000'000,
                               std::uint64_t seed = 0);

}  // namespace locrad
