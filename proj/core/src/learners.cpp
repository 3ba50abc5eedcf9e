#include "locrad/learners.hpp"

#include "locrad/error.hpp"
#include "locrad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace locrad {

namespace {

struct Split {
    std::vector<double> pos;  // ascending
    std::vector<double> neg;  // ascending
};

Split split_labels(const Sample& sample, std::span<const double> labels) {
    if (sample.dim() != 1) throw DimensionMismatch("interval learners need d = 1");
    if (labels.size() != sample.size()) throw DimensionMismatch("label count differs from sample size");
    Split s;
    for (std::size_t idx : sample.sorted_order()) {
        const double y = labels[idx];
        if (y != 0.0 && y != 1.0) throw InconsistentLabels("interval labels must be 0 or 1");
        (y == 1.0 ? s.pos : s.neg).push_back(sample.coord(idx, 0));
    }
    return s;
}

Interval intersect(const Interval& a, const Interval& b) {
    if (a.empty || b.empty) return Interval::none();
    const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    return lo <= hi ? Interval{lo, hi, false} : Interval::none();
}

double risk_of(const Interval& c, const Interval& t, const DistributionSpec& dist) {
    return std::max(0.0, dist.probability(c) + dist.probability(t) - 2.0 * dist.probability(intersect(c, t)));
}

// Candidate endpoints inside [lo, hi], with open ends nudged inward by one ulp.
std::vector<double> candidates(double lo, bool lo_open, double hi, bool hi_open, const Interval& t) {
    const double a = lo_open ? std::nextafter(lo, 2.0) : lo;
    const double b = hi_open ? std::nextafter(hi, -1.0) : hi;
    std::vector<double> c;
    if (a > b) return c;
    c = {a, b};
    if (!t.empty) {
        for (double x : {t.lo, t.hi}) {
            if (a < x && x < b) c.push_back(x);
        }
    }
    return c;
}

}  // namespace

Interval minimal_interval_learner(const Sample& sample, std::span<const double> labels) {
    const Split s = split_labels(sample, labels);
    if (s.pos.empty()) return Interval::none();
    const double lo = s.pos.front(), hi = s.pos.back();
    const auto it = std::lower_bound(s.neg.begin(), s.neg.end(), lo);
    if (it != s.neg.end() && *it <= hi) throw InconsistentLabels("a negative point lies between positive points");
    return Interval{lo, hi, false};
}

Interval worst_consistent_interval(const Sample& sample, std::span<const double> labels, const Interval& target,
                                   const DistributionSpec& dist) {
    const Split s = split_labels(sample, labels);
    Interval best = Interval::none();
    double best_risk = -1.0;
    auto offer = [&](const Interval& c) {
        const double r = risk_of(c, target, dist);
        if (r > best_risk) {
            best_risk = r;
            best = c;
        }
    };
    auto scan = [&](const std::vector<double>& as, const std::vector<double>& bs) {
        for (double a : as) {
            for (double b : bs) {
                if (a <= b) offer(Interval{a, b, false});
            }
        }
    };

    if (!s.pos.empty()) {
        const double pmin = s.pos.front(), pmax = s.pos.back();
        const auto it = std::lower_bound(s.neg.begin(), s.neg.end(), pmin);
        if (it != s.neg.end() && *it <= pmax) throw InconsistentLabels("a negative point lies between positive points");
        const bool has_left = it != s.neg.begin();
        const bool has_right = it != s.neg.end();
        const double left = has_left ? *(it - 1) : 0.0;
        const double right = has_right ? *it : 1.0;
        scan(candidates(left, has_left, pmin, false, target), candidates(pmax, false, right, has_right, target));
        return best;
    }

    // No positives: the empty set or any interval inside a gap between points.
    offer(Interval::none());
    const auto& pts = s.neg;
    for (std::size_t g = 0; g <= pts.size(); ++g) {
        const bool lo_open = g > 0, hi_open = g < pts.size();
        const double lo = lo_open ? pts[g - 1] : 0.0;
        const double hi = hi_open ? pts[g] : 1.0;
        const auto c = candidates(lo, lo_open, hi, hi_open, target);
        scan(c, c);
    }
    return best;
}

std::uint64_t pick_any_consistent(const SampledRestriction& reduced) { return reduced.zero_index(); }

TrueRisk true_risk(const Interval& estimate, const Interval& target, const DistributionSpec& dist) {
    return {risk_of(estimate, target, dist), 0.0};
}

TrueRisk true_risk(const Box& estimate, const Box& target, const DistributionSpec& dist) {
    if (estimate.sides.size() != dist.dim() || target.sides.size() != dist.dim()) {
        throw DimensionMismatch("box and distribution dimensions differ");
    }
    Box both;
    for (std::size_t k = 0; k < dist.dim(); ++k) both.sides.push_back(intersect(estimate.sides[k], target.sides[k]));
    const double v = dist.probability(estimate) + dist.probability(target) - 2.0 * dist.probability(both);
    return {std::max(0.0, v), 0.0};
}

TrueRisk true_risk_monte_carlo(const TargetSpec::Member& estimate, const TargetSpec::Member& target,
                               const DistributionSpec& dist, std::size_t points, std::uint64_t seed) {
    if (points == 0) throw InvalidArgument("Monte Carlo risk needs at least one point");
    auto member_of = [&](const TargetSpec::Member& m, std::span<const double> x) {
        if (const auto* iv = std::get_if<Interval>(&m)) {
            if (x.size() != 1) throw DimensionMismatch("interval member on a multivariate point");
            return iv->contains(x[0]);
        }
        if (const auto* box = std::get_if<Box>(&m)) return box->contains(x);
        throw InvalidArgument("Monte Carlo risk needs interval or box members");
    };
    Rng rng(seed);
    std::vector<double> x(dist.dim());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < points; ++i) {
        for (double& c : x) {
            const double u = rng.uniform01();
            c = dist.kind() == DistributionKind::uniform_cube ? u : dist.quantile(u);
        }
        if (member_of(estimate, x) != member_of(target, x)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(points);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(points))};
}

}  // namespace locrad
