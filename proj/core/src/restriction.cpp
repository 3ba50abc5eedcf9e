#include "locrad/restriction.hpp"

#include "locrad/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace locrad {

namespace {

std::uint64_t run_offset(std::uint64_t i, std::uint64_t g) { return i * g - i * (i - 1) / 2; }

IntervalRuns build_runs(const Sample& sample) {
    if (sample.dim() != 1) {
        throw DimensionMismatch("interval class needs a one-dimensional sample, got d = " +
                                std::to_string(sample.dim()));
    }
    IntervalRuns runs;
    runs.point_group.resize(sample.size());
    for (std::size_t idx : sample.sorted_order()) {
        const double x = sample.coord(idx, 0);
        if (runs.group_value.empty() || runs.group_value.back() != x) {
            runs.group_value.push_back(x);
            runs.group_size.push_back(0);
        }
        ++runs.group_size.back();
        runs.point_group[idx] = runs.groups() - 1;
    }
    return runs;
}

// Group range labelled 1, or nullopt for all-zero labels. Throws unless the
// labels are the indicator of a union of consecutive whole groups.
std::optional<std::pair<std::size_t, std::size_t>> label_run(const IntervalRuns& runs,
                                                             std::span<const double> labels) {
    const std::size_t g = runs.groups();
    std::vector<int> state(g, -1);  // -1 unseen, 0 all zero, 1 all one
    for (std::size_t j = 0; j < labels.size(); ++j) {
        const double y = labels[j];
        if (y != 0.0 && y != 1.0) throw InconsistentLabels("interval labels must be 0 or 1");
        const int v = y == 1.0 ? 1 : 0;
        int& s = state[runs.point_group[j]];
        if (s >= 0 && s != v) throw InconsistentLabels("tied points carry different labels");
        s = v;
    }
    std::optional<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k < g; ++k) {
        if (state[k] != 1) continue;
        if (!out) {
            out = std::pair{k, k};
        } else if (out->second + 1 == k) {
            out->second = k;
        } else {
            throw InconsistentLabels("labels are not the trace of an interval");
        }
    }
    return out;
}

using Bits = std::vector<std::uint64_t>;

std::string bits_key(const Bits& b) {
    return std::string(reinterpret_cast<const char*>(b.data()), b.size() * sizeof(std::uint64_t));
}

std::vector<std::vector<double>> enumerate_boxes(const Sample& sample) {
    const std::size_t n = sample.size();
    const std::size_t d = sample.dim();
    const std::size_t words = (n + 63) / 64;

    // Per dimension: all nonempty runs of distinct coordinate values.
    std::vector<std::vector<Bits>> side_masks(d);
    double combos = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = sample.coord(i, k);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (std::size_t a = 0; a < vals.size(); ++a) {
            for (std::size_t b = a; b < vals.size(); ++b) {
                Bits m(words, 0);
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = sample.coord(i, k);
                    if (vals[a] <= x && x <= vals[b]) m[i / 64] |= std::uint64_t{1} << (i % 64);
                }
                side_masks[k].push_back(std::move(m));
            }
        }
        combos *= static_cast<double>(side_masks[k].size());
    }
    if (combos > 1e8) {
        throw InvalidArgument("box enumeration too large for this sample (" + std::to_string(combos) + " boxes)");
    }

    std::unordered_set<std::string> seen;
    std::vector<std::vector<double>> out;
    auto emit = [&](const Bits& m) {
        if (!seen.insert(bits_key(m)).second) return;
        std::vector<double> v(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] = (m[i / 64] >> (i % 64)) & 1 ? 1.0 : 0.0;
        out.push_back(std::move(v));
    };
    emit(Bits(words, 0));

    std::vector<std::size_t> pick(d, 0);
    Bits cur(words);
    while (true) {
        cur = side_masks[0][pick[0]];
        for (std::size_t k = 1; k < d; ++k) {
            for (std::size_t w = 0; w < words; ++w) cur[w] &= side_masks[k][pick[k]][w];
        }
        emit(cur);
        std::size_t k = 0;
        while (k < d && ++pick[k] == side_masks[k].size()) pick[k++] = 0;
        if (k == d) break;
    }
    return out;
}

void check_finite_binding(const ConceptClass& cls, const Sample& sample) {
    if (const auto fp = cls.sample_fingerprint(); fp && *fp != sample.fingerprint()) {
        throw InvalidArgument("finite class is bound to a different sample");
    }
    if (cls.vectors().front().size() != sample.size()) {
        throw DimensionMismatch("finite class vectors have length " + std::to_string(cls.vectors().front().size()) +
                                ", sample has " + std::to_string(sample.size()) + " points");
    }
}

}  // namespace

SampledRestriction SampledRestriction::from_vectors(std::size_t n, const std::vector<std::vector<double>>& vectors) {
    if (n == 0) throw InvalidArgument("restriction needs n >= 1");
    SampledRestriction r;
    r.n_ = n;
    std::unordered_set<std::string> seen;
    seen.reserve(vectors.size());
    std::vector<double> row(n);
    for (const auto& v : vectors) {
        if (v.size() != n) throw DimensionMismatch("vector length differs from n");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(v[j] >= 0.0 && v[j] <= 1.0)) throw InvalidArgument("restriction entries must lie in [0,1]");
            row[j] = v[j] + 0.0;  // folds -0.0 into 0.0 before hashing
        }
        std::string key(reinterpret_cast<const char*>(row.data()), n * sizeof(double));
        if (!seen.insert(std::move(key)).second) continue;
        r.data_.insert(r.data_.end(), row.begin(), row.end());
        ++r.count_;
    }
    return r;
}

SampledRestriction SampledRestriction::from_runs(std::size_t n, IntervalRuns runs) {
    if (n == 0 || runs.point_group.size() != n) throw DimensionMismatch("run structure does not match n");
    SampledRestriction r;
    r.n_ = n;
    r.runs_ = std::move(runs);
    return r;
}

std::uint64_t SampledRestriction::size() const noexcept {
    if (runs_) {
        const std::uint64_t g = runs_->groups();
        return g * (g + 1) / 2 + 1;
    }
    return count_;
}

FastPath SampledRestriction::fast_path() const noexcept {
    if (!runs_) return FastPath::none;
    return runs_->target ? FastPath::intervals_with_target : FastPath::intervals_empty_target;
}

std::span<const double> SampledRestriction::vector(std::size_t i) const {
    if (runs_) throw InvalidArgument("structured restriction has no stored vectors; use vector_at");
    if (i >= count_) throw InvalidArgument("vector index out of range");
    return {data_.data() + i * n_, n_};
}

std::vector<double> SampledRestriction::vector_at(std::uint64_t i) const {
    if (!runs_) {
        const auto v = vector(static_cast<std::size_t>(i));
        return {v.begin(), v.end()};
    }
    if (i >= size()) throw InvalidArgument("vector index out of range");
    const std::uint64_t g = runs_->groups();
    bool has_run = false;
    std::uint64_t a = 0, b = 0;
    if (i > 0) {
        const std::uint64_t idx = i - 1;
        std::uint64_t lo = 0, hi = g - 1;
        while (lo < hi) {
            const std::uint64_t mid = (lo + hi + 1) / 2;
            if (run_offset(mid, g) <= idx) lo = mid; else hi = mid - 1;
        }
        a = lo;
        b = a + (idx - run_offset(a, g));
        has_run = true;
    }
    std::vector<double> out(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t grp = runs_->point_group[j];
        bool in = has_run && a <= grp && grp <= b;
        if (runs_->target) in ^= runs_->target->first <= grp && grp <= runs_->target->second;
        out[j] = in ? 1.0 : 0.0;
    }
    return out;
}

const IntervalRuns& SampledRestriction::runs() const {
    if (!runs_) throw InvalidArgument("restriction is not structured");
    return *runs_;
}

std::vector<std::vector<double>> SampledRestriction::materialize(std::size_t cap) const {
    if (size() > cap) {
        throw InvalidArgument("restriction has " + std::to_string(size()) + " vectors, cap is " + std::to_string(cap));
    }
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t i = 0; i < size(); ++i) out.push_back(vector_at(i));
    return out;
}

bool SampledRestriction::contains_zero() const noexcept {
    if (runs_) return true;
    for (std::size_t i = 0; i < count_; ++i) {
        const double* v = data_.data() + i * n_;
        if (std::all_of(v, v + n_, [](double x) { return x == 0.0; })) return true;
    }
    return false;
}

std::uint64_t SampledRestriction::zero_index() const {
    if (runs_) {
        if (!runs_->target) return 0;
        const auto [a, b] = *runs_->target;
        return 1 + run_offset(a, runs_->groups()) + (b - a);
    }
    for (std::size_t i = 0; i < count_; ++i) {
        const double* v = data_.data() + i * n_;
        if (std::all_of(v, v + n_, [](double x) { return x == 0.0; })) return i;
    }
    throw InconsistentLabels("restriction does not contain the zero vector");
}

bool SampledRestriction::is_binary() const noexcept {
    if (runs_) return true;
    return std::all_of(data_.begin(), data_.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

SampledRestriction restrict(const ConceptClass& cls, const Sample& sample) {
    switch (cls.kind()) {
        case ClassKind::intervals:
            return SampledRestriction::from_runs(sample.size(), build_runs(sample));
        case ClassKind::axis_boxes:
            if (cls.dim() != sample.dim()) {
                throw DimensionMismatch("box class has d = " + std::to_string(cls.dim()) + ", sample has d = " +
                                        std::to_string(sample.dim()));
            }
            return SampledRestriction::from_vectors(sample.size(), enumerate_boxes(sample));
        case ClassKind::finite_explicit:
            check_finite_binding(cls, sample);
            return SampledRestriction::from_vectors(sample.size(), cls.vectors());
    }
    throw InvalidArgument("unknown class kind");
}

std::uint64_t shattering_count(const ConceptClass& cls, const Sample& sample) {
    if (!cls.is_binary()) throw InvalidArgument("shattering count needs a {0,1}-valued class");
    return restrict(cls, sample).size();
}

SampledRestriction reduce_with_labels(const ConceptClass& cls, std::span<const double> labels, const Sample& sample) {
    const std::size_t n = sample.size();
    if (labels.size() != n) {
        throw DimensionMismatch("got " + std::to_string(labels.size()) + " labels for " + std::to_string(n) +
                                " points");
    }
    if (cls.kind() == ClassKind::intervals) {
        IntervalRuns runs = build_runs(sample);
        runs.target = label_run(runs, labels);
        return SampledRestriction::from_runs(n, std::move(runs));
    }
    const auto base = restrict(cls, sample);
    std::vector<std::vector<double>> reduced;
    reduced.reserve(static_cast<std::size_t>(base.size()));
    bool consistent = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto v = base.vector(i);
        std::vector<double> diff(n);
        bool zero = true;
        for (std::size_t j = 0; j < n; ++j) {
            diff[j] = std::abs(v[j] - labels[j]);
            zero = zero && diff[j] == 0.0;
        }
        consistent = consistent || zero;
        reduced.push_back(std::move(diff));
    }
    if (!consistent) throw InconsistentLabels("no class member reproduces the labels");
    return SampledRestriction::from_vectors(n, reduced);
}

SampledRestriction reduce_to_zero_target(const ConceptClass& cls, const TargetSpec& target, const Sample& sample) {
    const auto expected = evaluate(target.member(), sample);
    const auto& labels = target.labels();
    if (labels.size() != expected.size() || !std::equal(labels.begin(), labels.end(), expected.begin())) {
        throw InconsistentLabels("labels disagree with the target evaluated on the sample");
    }
    return reduce_with_labels(cls, labels, sample);
}

}  // namespace locrad
