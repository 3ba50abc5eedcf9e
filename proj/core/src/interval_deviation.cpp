#include "locrad/interval_deviation.hpp"

#include "locrad/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace locrad {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sorts by key and merges equal keys, summing their weights.
void group_by_key(std::vector<std::pair<double, double>>& kw) {
    std::sort(kw.begin(), kw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < kw.size(); ++i) {
        if (out > 0 && kw[out - 1].first == kw[i].first) {
            kw[out - 1].second += kw[i].second;
        } else {
            kw[out++] = kw[i];
        }
    }
    kw.resize(out);
}

}  // namespace

ProbabilityScale ProbabilityScale::map(const Sample& sample, const Interval& target, const DistributionSpec& dist) {
    if (sample.dim() != 1 || dist.dim() != 1) throw DimensionMismatch("probability scale needs d = 1");
    ProbabilityScale s;
    s.order = sample.sorted_order();
    s.u.reserve(s.order.size());
    for (std::size_t idx : s.order) s.u.push_back(dist.cdf(sample.coord(idx, 0)));
    s.target = target.empty ? Interval::none() : Interval{dist.cdf(target.lo), dist.cdf(target.hi), false};
    return s;
}

double ReducedIntervalSup::Profile::eval(double len) const {
    len = std::min(len, max_len);
    const auto kx = std::upper_bound(x.begin(), x.end(), len);
    double v = kx == x.begin() ? kNegInf : best[static_cast<std::size_t>(kx - x.begin()) - 1];
    const auto kd = std::upper_bound(d.begin(), d.end(), len);
    return std::max(v, cum[static_cast<std::size_t>(kd - d.begin())] - kappa * len);
}

ReducedIntervalSup::Profile ReducedIntervalSup::make_profile(std::vector<std::pair<double, double>> dist_weight,
                                                             double kappa, double max_len) {
    for (auto& [dd, w] : dist_weight) dd = std::clamp(dd, 0.0, max_len);
    group_by_key(dist_weight);
    Profile p;
    p.kappa = kappa;
    p.max_len = max_len;
    p.cum.push_back(0.0);
    p.x.push_back(0.0);
    p.best.push_back(0.0);
    for (const auto& [dd, w] : dist_weight) {
        const double before = p.cum.back();
        p.d.push_back(dd);
        p.cum.push_back(before + w);
        p.x.push_back(dd);
        p.best.push_back(std::max(before, before + w) - kappa * dd);
    }
    p.x.push_back(max_len);
    p.best.push_back(p.cum.back() - kappa * max_len);
    for (std::size_t i = 1; i < p.best.size(); ++i) p.best[i] = std::max(p.best[i], p.best[i - 1]);
    return p;
}

ReducedIntervalSup::Window ReducedIntervalSup::make_window(std::vector<std::pair<double, double>> pos_weight,
                                                           double lo, double hi) {
    group_by_key(pos_weight);
    Window w;
    w.lo = lo;
    w.hi = hi;
    w.cum.push_back(0.0);
    for (const auto& [pos, wt] : pos_weight) {
        w.p.push_back(pos);
        w.cum.push_back(w.cum.back() + wt);
    }
    return w;
}

double ReducedIntervalSup::Window::sup(double budget, double kappa) const {
    double best = 0.0;  // empty interval
    const std::size_t m = p.size();
    std::deque<std::size_t> q;
    if (kappa >= 0.0) {
        // Optimal intervals start and end at points: max A_j - B_i over
        // i <= j, p_j - p_i <= budget.
        auto key = [&](std::size_t i) { return cum[i] - kappa * p[i]; };
        std::size_t lo_idx = 0;
        for (std::size_t j = 0; j < m; ++j) {
            while (!q.empty() && key(q.back()) >= key(j)) q.pop_back();
            q.push_back(j);
            while (p[j] - p[lo_idx] > budget) ++lo_idx;
            while (q.front() < lo_idx) q.pop_front();
            best = std::max(best, cum[j + 1] - kappa * p[j] - key(q.front()));
        }
        return best;
    }
    // kappa < 0, weights <= 0: an optimal open interval spans the gap between
    // two boundary positions E_i < E_j (range ends included) minus the
    // points strictly between them, truncated to the budget.
    const double k = -kappa;
    std::vector<double> e(m + 2), c(m + 3, 0.0);
    e[0] = lo;
    e[m + 1] = hi;
    for (std::size_t i = 0; i < m; ++i) e[i + 1] = p[i];
    for (std::size_t i = 0; i < m; ++i) c[i + 2] = cum[i + 1];
    c[m + 2] = c[m + 1];
    auto key = [&](std::size_t i) { return k * e[i] + c[i + 1]; };
    std::size_t i0 = 0;
    for (std::size_t j = 1; j <= m + 1; ++j) {
        const std::size_t i = j - 1;
        while (!q.empty() && key(q.back()) >= key(i)) q.pop_back();
        q.push_back(i);
        while (e[j] - e[i0] > budget) ++i0;
        while (!q.empty() && q.front() < i0) q.pop_front();
        if (!q.empty()) best = std::max(best, k * e[j] + c[j] - key(q.front()));
        if (i0 > 0) best = std::max(best, k * budget + c[j] - c[i0]);
    }
    return best;
}

double ReducedIntervalSup::convolve(const Profile& left, const Profile& right, double budget) {
    double best = kNegInf;
    auto side = [&](const Profile& a, const Profile& b) {
        for (std::size_t i = 0; i < a.x.size(); ++i) {
            const double x = a.x[i];
            if (!(x <= budget)) break;
            best = std::max(best, a.best[i] + b.eval(budget - x));
        }
    };
    side(left, right);
    side(right, left);
    return best;
}

ReducedIntervalSup::ReducedIntervalSup(std::span<const double> u_sorted, std::span<const double> weights, double kappa,
                                       const Interval& target)
    : kappa_(kappa), target_(target) {
    if (u_sorted.size() != weights.size()) throw DimensionMismatch("positions and weights differ in length");
    for (std::size_t i = 0; i < u_sorted.size(); ++i) {
        if (!(u_sorted[i] >= 0.0 && u_sorted[i] <= 1.0)) throw InvalidArgument("positions must lie in [0,1]");
        if (i > 0 && u_sorted[i] < u_sorted[i - 1]) throw InvalidArgument("positions must be sorted");
        if (kappa < 0.0 && weights[i] > 0.0) throw InvalidArgument("negative kappa needs weights <= 0");
        if (kappa > 0.0 && !target.empty && weights[i] < 0.0) {
            throw InvalidArgument("positive kappa with a target needs weights >= 0");
        }
    }
    if (!target.empty && !(0.0 <= target.lo && target.lo <= target.hi && target.hi <= 1.0)) {
        throw InvalidArgument("target must lie in [0,1]");
    }

    std::vector<std::pair<double, double>> below, inside, above;
    for (std::size_t i = 0; i < u_sorted.size(); ++i) {
        const double u = u_sorted[i];
        if (target.empty || u < target.lo) {
            below.emplace_back(u, weights[i]);
        } else if (u > target.hi) {
            above.emplace_back(u, weights[i]);
        } else {
            inside.emplace_back(u, weights[i]);
        }
    }
    if (target.empty) {
        below_ = make_window(std::move(below), 0.0, 1.0);
        return;
    }
    const double t1 = target.lo, t2 = target.hi, len = t2 - t1;
    std::vector<std::pair<double, double>> ol, il, orr, ir;
    for (const auto& [u, w] : below) ol.emplace_back(t1 - u, w);
    for (const auto& [u, w] : above) orr.emplace_back(u - t2, w);
    target_value_ = -kappa * len;
    for (const auto& [u, w] : inside) {
        il.emplace_back(u - t1, w);
        ir.emplace_back(t2 - u, w);
        target_value_ += w;
    }
    std::vector<std::pair<double, double>> removed;
    for (const auto& [u, w] : inside) removed.emplace_back(u, -w);

    inside_ = make_window(std::move(removed), t1, t2);
    below_ = make_window(std::move(below), 0.0, t1);
    above_ = make_window(std::move(above), t2, 1.0);
    outer_left_ = make_profile(std::move(ol), kappa, t1);
    inner_left_ = make_profile(std::move(il), kappa, len);
    outer_right_ = make_profile(std::move(orr), kappa, 1.0 - t2);
    inner_right_ = make_profile(std::move(ir), kappa, len);
}

double ReducedIntervalSup::operator()(double radius) const {
    if (!(radius >= 0.0)) throw InvalidArgument("radius must be >= 0");
    if (target_.empty) return below_.sup(radius, kappa_);
    const double len = target_.hi - target_.lo;
    double best = 0.0;
    if (radius >= len) {
        // Every C inside T fits: D = T minus C, so remove the best window of
        // negated weights. C disjoint from T adds a window outside.
        const double spare = radius - len;
        best = std::max({best, target_value_ + inside_.sup(len, -kappa_), target_value_ + below_.sup(spare, kappa_),
                         target_value_ + above_.sup(spare, kappa_)});
    } else {
        // L + R <= radius < |T| keeps the two inner pieces apart.
        best = std::max(best, convolve(inner_left_, inner_right_, radius));
    }
    best = std::max({best, convolve(outer_left_, outer_right_, radius), convolve(outer_left_, inner_right_, radius),
                     convolve(inner_left_, outer_right_, radius)});
    return best;
}

namespace {

std::vector<double> constant_weights(std::size_t n, double w) { return std::vector<double>(n, w); }

std::vector<double> sign_weights(const ProbabilityScale& scale, std::span<const std::int8_t> signs, double factor) {
    if (signs.size() != scale.u.size()) throw DimensionMismatch("sign vector length differs from sample size");
    const double n = static_cast<double>(scale.u.size());
    std::vector<double> w(scale.u.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = factor * signs[scale.order[k]] / n;
    return w;
}

}  // namespace

EmpiricalDeviationSup::EmpiricalDeviationSup(const ProbabilityScale& scale)
    : over_(scale.u, constant_weights(scale.u.size(), 1.0 / static_cast<double>(scale.u.size())), 1.0, scale.target),
      under_(scale.u, constant_weights(scale.u.size(), -1.0 / static_cast<double>(scale.u.size())), -1.0,
             scale.target) {}

RademacherTrueBallSup::RademacherTrueBallSup(const ProbabilityScale& scale, std::span<const std::int8_t> signs)
    : plus_(scale.u, sign_weights(scale, signs, 1.0), 0.0, scale.target),
      minus_(scale.u, sign_weights(scale, signs, -1.0), 0.0, scale.target) {}

}  // namespace locrad
