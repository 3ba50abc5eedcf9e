#include "locrad/experiments.hpp"

#include "locrad/entropy.hpp"
#include "locrad/error.hpp"
#include "locrad/interval_deviation.hpp"
#include "locrad/learners.hpp"
#include "locrad/parallel.hpp"
#include "locrad/restriction.hpp"
#include "locrad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace locrad {

namespace {

constexpr std::size_t kTargetedCoverageCap = 4096;

RiskBoundOptions bound_options(std::optional<double> eps, std::optional<int> iterations, ConstantsMode mode,
                               ConstantTriple custom, double gamma, double gamma_prime, std::uint64_t seed) {
    RiskBoundOptions o;
    o.eps = eps;
    o.iterations = iterations;
    o.mode = mode;
    o.custom = custom;
    o.gamma = gamma;
    o.gamma_prime = gamma_prime;
    o.seed = seed;
    return o;
}

double quantile_sorted(const std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void aggregate(ExperimentReport& report) {
    std::vector<double> bounds, risks;
    for (const auto& row : report.rows) {
        bounds.push_back(row.bound);
        risks.push_back(row.true_risk);
        report.violations += row.violated ? 1 : 0;
        report.certificate =
            std::max(report.certificate, coverage_certificate(row.iterations, row.n, row.eps));
    }
    const auto reps = report.rows.size();
    report.violation_frequency = static_cast<double>(report.violations) / static_cast<double>(reps);
    report.tolerance = coverage_tolerance(report.certificate, reps);
    report.bound = summarize(bounds);
    report.risk = summarize(risks);
}

}  // namespace

std::vector<double> oracle_sequence(const ConceptClass& cls, const Interval& target, const Sample& sample,
                                    const DistributionSpec& dist, int k_max) {
    if (cls.kind() != ClassKind::intervals) throw InvalidArgument("oracle sequence needs the interval class");
    if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
    const EmpiricalDeviationSup dev(ProbabilityScale::map(sample, target, dist));
    std::vector<double> r{1.0};
    for (int k = 0; k < k_max; ++k) r.push_back(std::min(r.back(), dev(r.back())));
    return r;
}

Summary summarize(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("summary of an empty list");
    std::sort(values.begin(), values.end());
    Summary s;
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.median = quantile_sorted(values, 0.5);
    s.q05 = quantile_sorted(values, 0.05);
    s.q95 = quantile_sorted(values, 0.95);
    return s;
}

double coverage_tolerance(double certificate, std::size_t reps) {
    if (reps == 0) throw InvalidArgument("reps must be >= 1");
    const double c = std::clamp(certificate, 0.0, 1.0);
    const double r = static_cast<double>(reps);
    return certificate + 3.0 * std::sqrt(c * (1.0 - c) / r) + 1.0 / r;
}

ExperimentReport run_coverage(const CoverageConfig& config) {
    if (config.reps == 0) throw InvalidArgument("reps must be >= 1");
    if (config.dist.dim() != 1) throw InvalidArgument("coverage runs use the interval class on d = 1");
    if (!config.target.empty && config.n > kTargetedCoverageCap) {
        throw InvalidArgument("coverage with a nonempty target is capped at n = " +
                              std::to_string(kTargetedCoverageCap));
    }
    const ConceptClass cls = ConceptClass::intervals();
    ExperimentReport report;
    report.rows.resize(config.reps);
    parallel_for(config.reps, [&](std::size_t i) {
        ReplicationResult& row = report.rows[i];
        row.rep = i;
        row.n = config.n;
        row.sample_seed = derive_seed(config.master_seed, i, kSampleStream);
        row.sign_seed = derive_seed(config.master_seed, i, kSignStream);
        const Sample sample = draw_sample(config.dist, config.n, row.sample_seed);
        const auto labels = evaluate(config.target, sample);
        const auto reduced = reduce_with_labels(cls, labels, sample);
        const RiskBound rb = risk_bound_reduced(
            reduced, config.delta_conf,
            bound_options(config.eps, config.iterations, config.mode, config.custom, config.gamma,
                          config.gamma_prime, row.sign_seed));
        const Interval est = config.learner == LearnerKind::minimal
                                 ? minimal_interval_learner(sample, labels)
                                 : worst_consistent_interval(sample, labels, config.target, config.dist);
        row.eps = rb.eps;
        row.iterations = rb.iterations;
        row.bound = rb.bound;
        row.true_risk = true_risk(est, config.target, config.dist).value;
        row.violated = row.true_risk >= row.bound;
        row.trace = rb.trace;
    });
    aggregate(report);
    return report;
}

ExperimentReport run_rates(const RatesConfig& config) {
    const auto& grid = config.n_grid;
    if (grid.size() < 4) throw InvalidArgument("rate runs need at least 4 sample sizes");
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] == 0 || (g > 0 && grid[g] <= grid[g - 1])) {
            throw InvalidArgument("sample size grid must be positive and strictly increasing");
        }
    }
    if (config.reps == 0) throw InvalidArgument("reps must be >= 1");
    if (config.cls == RatesClass::intervals && config.dist.dim() != 1) {
        throw InvalidArgument("interval rate runs need d = 1");
    }
    const ConceptClass cls = ConceptClass::intervals();
    const std::size_t total = grid.size() * config.reps;
    ExperimentReport report;
    report.rows.resize(total);
    parallel_for(total, [&](std::size_t idx) {
        const std::size_t n = grid[idx / config.reps];
        ReplicationResult& row = report.rows[idx];
        row.rep = idx % config.reps;
        row.n = n;
        row.sample_seed = derive_seed(config.master_seed, idx, kSampleStream);
        row.sign_seed = derive_seed(config.master_seed, idx, kSignStream);
        const double eps = config.eps ? *config.eps : 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
        const auto opts = bound_options(eps, config.iterations, config.mode, config.custom, config.gamma,
                                        config.gamma_prime, row.sign_seed);
        RiskBound rb;
        if (config.cls == RatesClass::zero) {
            const auto reduced = SampledRestriction::from_vectors(n, {std::vector<double>(n, 0.0)});
            rb = risk_bound_reduced(reduced, 0.05, opts);
            row.true_risk = 0.0;
        } else {
            const Sample sample = draw_sample(config.dist, n, row.sample_seed);
            const auto labels = evaluate(config.target, sample);
            rb = risk_bound_reduced(reduce_with_labels(cls, labels, sample), 0.05, opts);
            row.true_risk = true_risk(minimal_interval_learner(sample, labels), config.target, config.dist).value;
        }
        row.eps = rb.eps;
        row.iterations = rb.iterations;
        row.bound = rb.bound;
        row.violated = row.true_risk >= row.bound;
        row.trace = std::move(rb.trace);
    });
    aggregate(report);

    std::vector<std::pair<double, double>> fit_points;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> bounds, risks;
        for (std::size_t j = 0; j < config.reps; ++j) {
            bounds.push_back(report.rows[g * config.reps + j].bound);
            risks.push_back(report.rows[g * config.reps + j].true_risk);
        }
        RatesRow rr;
        rr.n = grid[g];
        rr.eps = report.rows[g * config.reps].eps;
        rr.iterations = report.rows[g * config.reps].iterations;
        rr.bound_median = summarize(bounds).median;
        rr.risk_median = summarize(risks).median;
        report.rates.push_back(rr);
        fit_points.emplace_back(static_cast<double>(rr.n), rr.bound_median);
    }
    const RateFit fit = rate_exponent_fit(fit_points);
    report.slope = fit.slope;
    report.slope_r2 = fit.r2;
    return report;
}

std::vector<DiagnoseRow> diagnose_ladder(const DiagnoseConfig& config, std::size_t instance) {
    config.ladder.validate();
    if (config.mc_draws == 0) throw InvalidArgument("Monte Carlo draw count must be >= 1");
    if (config.radii.empty()) throw InvalidArgument("diagnose needs at least one radius");
    const std::size_t nr = config.radii.size();

    const Sample sample = draw_sample(config.dist, config.n, derive_seed(config.master_seed, instance, kSampleStream));
    const RademacherDraw signs =
        RademacherDraw::draw(config.n, derive_seed(config.master_seed, instance, kSignStream));
    const ProbabilityScale scale = ProbabilityScale::map(sample, config.target, config.dist);
    const EmpiricalDeviationSup dev(scale);
    const RademacherTrueBallSup rad(scale, signs.signs);

    const std::uint64_t mc_master = derive_seed(config.master_seed, instance, kMonteCarloStream);
    std::vector<double> mean_dev(nr, 0.0), mean_rad(nr, 0.0);
    for (std::size_t m = 0; m < config.mc_draws; ++m) {
        const Sample s = draw_sample(config.dist, config.n, derive_seed(mc_master, m, kSampleStream));
        const EmpiricalDeviationSup d(ProbabilityScale::map(s, config.target, config.dist));
        for (std::size_t k = 0; k < nr; ++k) mean_dev[k] += d(config.radii[k]);
    }
    if (config.with_phi4) {
        const auto reduced =
            reduce_with_labels(ConceptClass::intervals(), evaluate(config.target, sample), sample);
        for (std::size_t m = 0; m < config.mc_draws; ++m) {
            const LocalNormEvaluator norm(reduced,
                                          RademacherDraw::draw(config.n, derive_seed(mc_master, m, kSignStream)));
            for (std::size_t k = 0; k < nr; ++k) mean_rad[k] += norm(2.0 * config.radii[k]);
        }
    }
    const double draws = static_cast<double>(config.mc_draws);
    std::vector<DiagnoseRow> rows(nr);
    for (std::size_t k = 0; k < nr; ++k) {
        const double r = config.radii[k];
        DiagnoseRow& row = rows[k];
        row.r = r;
        row.inputs.empirical_deviation = dev(r);
        row.inputs.expected_empirical_deviation = mean_dev[k] / draws;
        row.inputs.rademacher_norm = rad(r);
        if (config.with_phi4) row.inputs.expected_rademacher_norm = mean_rad[k] / draws;
        row.phi = phi_ladder(r, row.inputs, config.ladder, available_phis(row.inputs));
    }
    return rows;
}

}  // namespace locrad
