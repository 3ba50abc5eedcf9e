#include "locrad/rademacher.hpp"

#include "locrad/csv.hpp"
#include "locrad/error.hpp"
#include "locrad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <string>

namespace locrad {

RademacherDraw RademacherDraw::draw(std::size_t n, std::uint64_t seed) {
    RademacherDraw d;
    d.seed = seed;
    d.signs.resize(n);
    Rng rng(seed);
    for (auto& s : d.signs) s = static_cast<std::int8_t>(rng.sign());
    return d;
}

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void LocalizationConfig::validate() const {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be a finite value >= 0");
    if (!in_open_unit(gamma)) throw InvalidArgument("gamma must lie in (0,1), got " + format_real(gamma));
    if (!in_open_unit(gamma_prime)) {
        throw InvalidArgument("gamma_prime must lie in (0,1), got " + format_real(gamma_prime));
    }
    if (mode == ConstantsMode::custom && !(custom.k1 > 0.0 && custom.k2 > 0.0 && custom.k3 > 0.0)) {
        throw InvalidArgument("custom constants must all be positive");
    }
    if (iteration_override && *iteration_override < 1) throw InvalidArgument("iteration count must be >= 1");
    if (eps == 0.0 && !iteration_override) throw InvalidArgument("eps = 0 requires an explicit iteration count");
}

ConstantTriple LocalizationConfig::constants() const {
    switch (mode) {
        case ConstantsMode::safe: return constants_from_gammas(gamma, gamma_prime);
        case ConstantsMode::unit: return {1.0, 1.0, 1.0};
        case ConstantsMode::custom: return custom;
    }
    return {};
}

int LocalizationConfig::iterations() const {
    return iteration_override ? *iteration_override : default_iterations(eps);
}

ConstantTriple constants_from_gammas(double gamma, double gamma_prime) {
    if (!in_open_unit(gamma) || !in_open_unit(gamma_prime)) {
        throw InvalidArgument("gamma and gamma_prime must lie in (0,1)");
    }
    const double k1 = 2.0 * (1.0 + gamma) / (1.0 - gamma_prime);
    return {k1, k1 * std::sqrt(5.4) + 2.0, k1 * (1.75 + 21.6 / gamma_prime) + 1.75 + 16.0 / gamma};
}

std::size_t max_weight_within(double r, std::size_t n) {
    if (!(r >= 0.0)) throw InvalidArgument("radius must be >= 0");
    if (r >= 1.0) return n;
    const double nn = static_cast<double>(n);
    auto w = static_cast<std::size_t>(std::floor(r * nn));
    w = std::min(w, n);
    while (w < n && static_cast<double>(w + 1) / nn <= r) ++w;
    while (w > 0 && static_cast<double>(w) / nn > r) --w;
    return w;
}

LocalNormEvaluator::LocalNormEvaluator(const SampledRestriction& restriction, const RademacherDraw& draw)
    : restriction_(&restriction), n_(restriction.n()) {
    if (draw.size() != n_) {
        throw DimensionMismatch("draw has " + std::to_string(draw.size()) + " signs, restriction has n = " +
                                std::to_string(n_));
    }
    const double nn = static_cast<double>(n_);

    if (!restriction.is_structured()) {
        const std::size_t m = static_cast<std::size_t>(restriction.size());
        std::vector<std::pair<double, double>> rows(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto v = restriction.vector(i);
            double sum = 0.0, dot = 0.0;
            for (std::size_t j = 0; j < n_; ++j) {
                sum += v[j];
                dot += draw.signs[j] * v[j];
            }
            rows[i] = {sum / nn, std::abs(dot) / nn};
        }
        std::sort(rows.begin(), rows.end());
        table_mean_.resize(m);
        table_best_.resize(m);
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            best = std::max(best, rows[i].second);
            table_mean_[i] = rows[i].first;
            table_best_[i] = best;
        }
        return;
    }

    const IntervalRuns& runs = restriction.runs();
    const std::size_t g = runs.groups();
    group_sum_.assign(g, 0);
    for (std::size_t j = 0; j < n_; ++j) group_sum_[runs.point_group[j]] += draw.signs[j];
    if (!runs.target) return;

    // |C delta T| and its signed sum from prefix sums over groups:
    // S(C delta T) = S(C) + S(T) - 2 S(C and T), likewise for weights.
    std::vector<long long> ps(g + 1, 0), pw(g + 1, 0);
    for (std::size_t k = 0; k < g; ++k) {
        ps[k + 1] = ps[k] + group_sum_[k];
        pw[k + 1] = pw[k] + static_cast<long long>(runs.group_size[k]);
    }
    const auto [ta, tb] = *runs.target;
    const long long st = ps[tb + 1] - ps[ta], wt = pw[tb + 1] - pw[ta];
    std::vector<long long> best(n_ + 1, -1);
    auto offer = [&](long long w, long long s) {
        auto& b = best[static_cast<std::size_t>(w)];
        b = std::max(b, s < 0 ? -s : s);
    };
    offer(wt, st);  // empty run
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a; b < g; ++b) {
            const std::size_t lo = std::max(a, ta), hi = std::min(b, tb);
            long long si = 0, wi = 0;
            if (lo <= hi) {
                si = ps[hi + 1] - ps[lo];
                wi = pw[hi + 1] - pw[lo];
            }
            offer(pw[b + 1] - pw[a] + wt - 2 * wi, ps[b + 1] - ps[a] + st - 2 * si);
        }
    }
    best_by_weight_.resize(n_ + 1);
    long long run_best = 0;
    for (std::size_t w = 0; w <= n_; ++w) {
        run_best = std::max(run_best, best[w]);
        best_by_weight_[w] = static_cast<double>(run_best) / nn;
    }
}

double LocalNormEvaluator::window_norm(std::size_t budget) const {
    // max over runs of consecutive groups with total size <= budget of
    // |P_j - P_i|, where P are prefix sums over groups.
    const IntervalRuns& runs = restriction_->runs();
    const std::size_t g = runs.groups();
    std::deque<std::size_t> qmin, qmax;
    std::vector<long long> p(g + 1, 0), w(g + 1, 0);
    for (std::size_t k = 0; k < g; ++k) {
        p[k + 1] = p[k] + group_sum_[k];
        w[k + 1] = w[k] + static_cast<long long>(runs.group_size[k]);
    }
    const auto cap = static_cast<long long>(budget);
    long long best = 0;
    std::size_t lo = 0;
    for (std::size_t j = 0; j <= g; ++j) {
        while (!qmin.empty() && p[qmin.back()] >= p[j]) qmin.pop_back();
        qmin.push_back(j);
        while (!qmax.empty() && p[qmax.back()] <= p[j]) qmax.pop_back();
        qmax.push_back(j);
        while (w[j] - w[lo] > cap) ++lo;
        while (qmin.front() < lo) qmin.pop_front();
        while (qmax.front() < lo) qmax.pop_front();
        best = std::max({best, p[j] - p[qmin.front()], p[qmax.front()] - p[j]});
    }
    return static_cast<double>(best) / static_cast<double>(n_);
}

double LocalNormEvaluator::operator()(double radius) const {
    if (!(radius >= 0.0)) throw InvalidArgument("ball radius must be >= 0");
    if (!restriction_->is_structured()) {
        const auto it = std::upper_bound(table_mean_.begin(), table_mean_.end(), radius);
        if (it == table_mean_.begin()) return 0.0;
        return table_best_[static_cast<std::size_t>(it - table_mean_.begin()) - 1];
    }
    const std::size_t budget = max_weight_within(radius, n_);
    if (restriction_->runs().target) return best_by_weight_[budget];
    return window_norm(budget);
}

double local_rademacher_norm(const SampledRestriction& restriction, const RademacherDraw& draw, double radius) {
    if (!(radius >= 0.0)) throw InvalidArgument("ball radius must be >= 0");
    return LocalNormEvaluator(restriction, draw)(radius);
}

int default_iterations(double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be > 0");
    if (eps >= 1.0) throw InvalidArgument("eps must be < 1, got " + format_real(eps));
    if (eps >= 0.5) return 1;
    return static_cast<int>(std::floor(std::log2(std::log2(1.0 / eps)))) + 1;
}

double phi_bar(const LocalNormEvaluator& norm, const LocalizationConfig& config, double r) {
    if (!(r >= 0.0)) throw InvalidArgument("phi_bar needs r >= 0");
    const ConstantTriple k = config.constants();
    return k.k1 * norm(2.0 * r) + k.k2 * std::sqrt(r * config.eps) + k.k3 * config.eps;
}

double phi_bar(const SampledRestriction& restriction, const RademacherDraw& draw, const LocalizationConfig& config,
               double r) {
    return phi_bar(LocalNormEvaluator(restriction, draw), config, r);
}

BoundTrace localize(const SampledRestriction& restriction, const RademacherDraw& draw,
                    const LocalizationConfig& config) {
    config.validate();
    const int steps = config.iterations();
    const LocalNormEvaluator norm(restriction, draw);
    const ConstantTriple k = config.constants();
    BoundTrace trace;
    trace.config = config;
    trace.draw_seed = draw.seed;
    double r = 1.0;
    for (int s = 0; s <= steps; ++s) {
        const double nu = norm(2.0 * r);
        trace.values.push_back(r);
        trace.local_norms.push_back(nu);
        if (s == steps) break;
        r = std::min(k.k1 * nu + k.k2 * std::sqrt(r * config.eps) + k.k3 * config.eps, 1.0);
    }
    return trace;
}

double coverage_certificate(int iterations, std::size_t n, double eps) {
    return 2.0 * iterations * std::exp(-static_cast<double>(n) * eps / 2.0);
}

LocalizationConfig resolve_bound_config(std::size_t n, double delta_conf, const RiskBoundOptions& options) {
    if (!in_open_unit(delta_conf)) throw InvalidArgument("delta must lie in (0,1), got " + format_real(delta_conf));
    if (n == 0) throw InvalidArgument("sample size must be >= 1");
    LocalizationConfig cfg;
    cfg.eps = options.eps ? *options.eps
                          : 2.0 * std::log(2.0 * kIterationCap / delta_conf) / static_cast<double>(n);
    cfg.gamma = options.gamma;
    cfg.gamma_prime = options.gamma_prime;
    cfg.mode = options.mode;
    cfg.custom = options.custom;
    if (options.iterations) {
        cfg.iteration_override = *options.iterations;
    } else if (cfg.eps >= 1.0) {
        // Small samples: the recursion is clamped at 1 anyway.
        cfg.iteration_override = 1;
    } else {
        cfg.iteration_override = std::min(default_iterations(cfg.eps), kIterationCap);
    }
    cfg.validate();
    return cfg;
}

RiskBound risk_bound_reduced(const SampledRestriction& reduced, double delta_conf, const RiskBoundOptions& options) {
    if (!reduced.contains_zero()) throw InconsistentLabels("reduced restriction lacks the zero vector");
    const LocalizationConfig cfg = resolve_bound_config(reduced.n(), delta_conf, options);
    const RademacherDraw draw = RademacherDraw::draw(reduced.n(), options.seed);
    RiskBound out;
    out.trace = localize(reduced, draw, cfg);
    out.bound = out.trace.final_value();
    out.eps = cfg.eps;
    out.iterations = cfg.iterations();
    out.certificate = coverage_certificate(out.iterations, reduced.n(), cfg.eps);
    return out;
}

RiskBound risk_bound(const ConceptClass& cls, std::span<const double> labels, const Sample& sample,
                     double delta_conf, const RiskBoundOptions& options) {
    return risk_bound_reduced(reduce_with_labels(cls, labels, sample), delta_conf, options);
}

}  // namespace locrad
