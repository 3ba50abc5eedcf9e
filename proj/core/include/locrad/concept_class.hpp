#pragma once

#include "locrad/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace locrad {

/// Closed interval [lo, hi] inside [0,1], or the empty set.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    static Interval none() { return {}; }
    /// Throws InvalidArgument unless 0 <= lo <= hi <= 1.
    static Interval closed(double lo, double hi);

    bool contains(double x) const noexcept { return !empty && lo <= x && x <= hi; }
    double length() const noexcept { return empty ? 0.0 : hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of closed intervals; empty iff any side is empty.
struct Box {
    std::vector<Interval> sides;

    static Box none(std::size_t dim);
    bool empty() const noexcept;
    bool contains(std::span<const double> x) const noexcept;
};

enum class ClassKind { finite_explicit, intervals, axis_boxes };

inline constexpr std::size_t kDefaultMaxVectors = 1'000'000;

/// A concept or function class with values in [0,1].
///
/// Parametric kinds (intervals, axis boxes) always contain the empty set,
/// hence the zero function. Finite-explicit classes are lists of value
/// vectors tied to one sample, either by length only or by fingerprint.
class ConceptClass {
public:
    static ConceptClass intervals();
    static ConceptClass axis_boxes(std::size_t dim);
    static ConceptClass finite(std::vector<std::vector<double>> vectors,
                               std::optional<std::uint64_t> sample_fingerprint = std::nullopt,
                               std::size_t max_vectors = kDefaultMaxVectors);
    /// Finite class bound to `sample` by fingerprint.
    static ConceptClass finite_for(const Sample& sample, std::vector<std::vector<double>> vectors,
                                   std::size_t max_vectors = kDefaultMaxVectors);

    ClassKind kind() const noexcept { return kind_; }
    /// Dimension of the domain for parametric kinds; 0 for finite-explicit.
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::vector<double>>& vectors() const noexcept { return vectors_; }
    std::optional<std::uint64_t> sample_fingerprint() const noexcept { return fingerprint_; }
    bool is_binary() const noexcept;

private:
    ConceptClass(ClassKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

    ClassKind kind_;
    std::size_t dim_;
    std::vector<std::vector<double>> vectors_;
    std::optional<std::uint64_t> fingerprint_;
};

ConceptClass load_finite_class_csv(const std::filesystem::path& path,
                                   std::size_t max_vectors = kDefaultMaxVectors);

/// The target f0 together with its labels Y_j = f0(X_j).
class TargetSpec {
public:
    using Member = std::variant<Interval, Box, std::vector<double>>;

    /// Evaluates the member on the sample to obtain the labels.
    static TargetSpec from_member(Member member, const Sample& sample);

    /// Pairs a member with externally supplied labels; consistency is
    /// checked when the target is used.
    TargetSpec(Member member, std::vector<double> labels)
        : member_(std::move(member)), labels_(std::move(labels)) {}

    const Member& member() const noexcept { return member_; }
    const std::vector<double>& labels() const noexcept { return labels_; }

private:
    Member member_;
    std::vector<double> labels_;
};

/// Values of a class member at the sample points.
std::vector<double> evaluate(const TargetSpec::Member& member, const Sample& sample);

}  // namespace locrad
