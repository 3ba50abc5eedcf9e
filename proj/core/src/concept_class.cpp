#include "locrad/concept_class.hpp"

#include "locrad/csv.hpp"
#include "locrad/error.hpp"

#include <algorithm>
#include <string>

namespace locrad {

Interval Interval::closed(double lo, double hi) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
        throw InvalidArgument("interval [" + format_real(lo) + ", " + format_real(hi) + "] is not inside [0,1]");
    }
    return Interval{lo, hi, false};
}

Box Box::none(std::size_t dim) { return Box{std::vector<Interval>(dim, Interval::none())}; }

bool Box::empty() const noexcept {
    return sides.empty() || std::any_of(sides.begin(), sides.end(), [](const Interval& s) { return s.empty; });
}

bool Box::contains(std::span<const double> x) const noexcept {
    if (empty() || x.size() != sides.size()) return false;
    for (std::size_t k = 0; k < sides.size(); ++k) {
        if (!sides[k].contains(x[k])) return false;
    }
    return true;
}

ConceptClass ConceptClass::intervals() { return ConceptClass(ClassKind::intervals, 1); }

ConceptClass ConceptClass::axis_boxes(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("box dimension must be at least 1");
    return ConceptClass(ClassKind::axis_boxes, dim);
}

ConceptClass ConceptClass::finite(std::vector<std::vector<double>> vectors,
                                  std::optional<std::uint64_t> sample_fingerprint, std::size_t max_vectors) {
    if (vectors.empty()) throw InvalidArgument("finite class needs at least one vector");
    if (vectors.size() > max_vectors) {
        throw InvalidArgument("finite class has " + std::to_string(vectors.size()) + " vectors, cap is " +
                              std::to_string(max_vectors));
    }
    const std::size_t n = vectors.front().size();
    if (n == 0) throw InvalidArgument("finite class vectors must be nonempty");
    for (const auto& v : vectors) {
        if (v.size() != n) throw DimensionMismatch("finite class vectors have different lengths");
        for (double x : v) {
            if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("finite class value outside [0,1]: " + format_real(x));
        }
    }
    ConceptClass cls(ClassKind::finite_explicit, 0);
    cls.vectors_ = std::move(vectors);
    cls.fingerprint_ = sample_fingerprint;
    return cls;
}

ConceptClass ConceptClass::finite_for(const Sample& sample, std::vector<std::vector<double>> vectors,
                                      std::size_t max_vectors) {
    if (!vectors.empty() && vectors.front().size() != sample.size()) {
        throw DimensionMismatch("finite class vectors must have one entry per sample point");
    }
    return finite(std::move(vectors), sample.fingerprint(), max_vectors);
}

bool ConceptClass::is_binary() const noexcept {
    if (kind_ != ClassKind::finite_explicit) return true;
    for (const auto& v : vectors_) {
        for (double x : v) {
            if (x != 0.0 && x != 1.0) return false;
        }
    }
    return true;
}

ConceptClass load_finite_class_csv(const std::filesystem::path& path, std::size_t max_vectors) {
    auto table = read_numeric_csv(path);
    if (table.rows.empty()) throw IoError("no vectors in " + path.string());
    return ConceptClass::finite(std::move(table.rows), std::nullopt, max_vectors);
}

std::vector<double> evaluate(const TargetSpec::Member& member, const Sample& sample) {
    const std::size_t n = sample.size();
    std::vector<double> out(n, 0.0);
    if (const auto* iv = std::get_if<Interval>(&member)) {
        if (sample.dim() != 1) throw DimensionMismatch("interval target on a multivariate sample");
        for (std::size_t i = 0; i < n; ++i) out[i] = iv->contains(sample.coord(i, 0)) ? 1.0 : 0.0;
    } else if (const auto* box = std::get_if<Box>(&member)) {
        if (box->sides.size() != sample.dim()) throw DimensionMismatch("box and sample dimensions differ");
        for (std::size_t i = 0; i < n; ++i) out[i] = box->contains(sample.point(i)) ? 1.0 : 0.0;
    } else {
        const auto& v = std::get<std::vector<double>>(member);
        if (v.size() != n) throw DimensionMismatch("explicit target length differs from sample size");
        out = v;
    }
    return out;
}

TargetSpec TargetSpec::from_member(Member member, const Sample& sample) {
    auto labels = evaluate(member, sample);
    return TargetSpec(std::move(member), std::move(labels));
}

}  // namespace locrad
