#pragma once

#include "locrad/concept_class.hpp"
#include "locrad/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace locrad {

enum class FastPath {
    none,
    intervals_empty_target,  ///< vectors are indicators of contiguous runs
    intervals_with_target,   ///< indicators of run symmetric differences
};

/// Interval class on a one-dimensional sample, grouped by distinct value.
///
/// A vector of the restriction is the indicator of a contiguous run of
/// groups (or the empty run), symmetric-differenced with the target run.
struct IntervalRuns {
    std::vector<double> group_value;       ///< distinct values, ascending
    std::vector<std::size_t> group_size;   ///< multiplicity of each value
    std::vector<std::size_t> point_group;  ///< group of each point, in sample order
    /// Inclusive group range covered by the target, when nonempty.
    std::optional<std::pair<std::size_t, std::size_t>> target;

    std::size_t groups() const noexcept { return group_value.size(); }
};

/// Distinct value vectors of a class on a sample.
///
/// Explicit restrictions store their vectors. Interval restrictions are
/// structured: vectors are indexed (0 = empty run, then runs (i, j), i <= j,
/// in lexicographic order) and generated on demand.
class SampledRestriction {
public:
    /// Deduplicates `vectors`, keeping first occurrences in order.
    static SampledRestriction from_vectors(std::size_t n, const std::vector<std::vector<double>>& vectors);
    static SampledRestriction from_runs(std::size_t n, IntervalRuns runs);

    std::size_t n() const noexcept { return n_; }
    std::uint64_t size() const noexcept;
    FastPath fast_path() const noexcept;
    bool is_structured() const noexcept { return runs_.has_value(); }

    /// Vector `i` of an explicit restriction.
    std::span<const double> vector(std::size_t i) const;
    /// Vector `i` of any restriction, as a new vector.
    std::vector<double> vector_at(std::uint64_t i) const;
    const IntervalRuns& runs() const;

    /// All vectors; throws InvalidArgument if there are more than `cap`.
    std::vector<std::vector<double>> materialize(std::size_t cap = kDefaultMaxVectors) const;

    bool contains_zero() const noexcept;
    /// Lowest index of the all-zero vector; throws InconsistentLabels if absent.
    std::uint64_t zero_index() const;
    bool is_binary() const noexcept;

private:
    SampledRestriction() = default;

    std::size_t n_ = 0;
    std::vector<double> data_;  // explicit vectors, row-major, n_ per row
    std::size_t count_ = 0;
    std::optional<IntervalRuns> runs_;
};

/// {(f(X_1), ..., f(X_n)) : f in class}, deduplicated.
SampledRestriction restrict(const ConceptClass& cls, const Sample& sample);

/// Number of distinct dichotomies cut out on the sample by a concept class.
std::uint64_t shattering_count(const ConceptClass& cls, const Sample& sample);

/// Restriction of {|f - f0| : f in class}; always contains the zero vector.
SampledRestriction reduce_to_zero_target(const ConceptClass& cls, const TargetSpec& target,
                                         const Sample& sample);

/// Same reduction driven by labels alone; throws InconsistentLabels when no
/// class member reproduces the labels.
SampledRestriction reduce_with_labels(const ConceptClass& cls, std::span<const double> labels,
                                      const Sample& sample);

}  // namespace locrad
