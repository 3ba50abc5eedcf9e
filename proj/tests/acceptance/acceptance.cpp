// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "locrad/concentration.hpp"
#include "locrad/concept_class.hpp"
#include "locrad/csv.hpp"
#include "locrad/distribution.hpp"
#include "locrad/entropy.hpp"
#include "locrad/experiments.hpp"
#include "locrad/learners.hpp"
#include "locrad/rademacher.hpp"
#include "locrad/report_io.hpp"
#include "locrad/restriction.hpp"
#include "locrad/rng.hpp"
#include "oracles/brute_force.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace locrad;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    if (secs > limit_seconds) {
        pass = false;
        o.detail += " [over time limit]";
    }
    if (!pass) ++failures;
    std::printf("criterion %2d %-28s %s  %s (%.2fs, limit %.0fs)\n", id, name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, limit_seconds);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// A random restriction with n <= 12 and at most 40 vectors: binary, real
// valued, or the interval class on a random sample.
SampledRestriction random_restriction(std::mt19937_64& g) {
    std::uniform_int_distribution<int> size(1, 12), count(1, 40), kind(0, 2);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = static_cast<std::size_t>(size(g));
    const int k = kind(g);
    if (k == 2 && n <= 7) {
        // at most 29 interval dichotomies
        std::vector<double> x(n);
        for (auto& v : x) v = unif(g);
        return restrict(ConceptClass::intervals(), Sample::from_values(x));
    }
    std::vector<std::vector<double>> vecs;
    const int m = count(g);
    for (int j = 0; j < m; ++j) {
        std::vector<double> v(n);
        for (auto& e : v) e = k == 0 ? (unif(g) < 0.4 ? 1.0 : 0.0) : unif(g);
        vecs.push_back(std::move(v));
    }
    return SampledRestriction::from_vectors(n, vecs);
}

Outcome oracle_equivalence() {
    std::mt19937_64 g(101);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int inst = 0; inst < 200; ++inst) {
        const auto rest = random_restriction(g);
        const auto draw = RademacherDraw::draw(rest.n(), derive_seed(101, inst, kSignStream));
        const auto vecs = rest.materialize();
        for (int j = 0; j < 5; ++j) {
            const double r = j == 0 ? 1.0 : unif(g);
            const double fast = local_rademacher_norm(rest, draw, r);
            const double slow = oracle::local_norm(vecs, draw.signs, r);
            worst = std::max(worst, std::abs(fast - slow));
        }
    }
    return {worst <= 1e-12, "max |fast - exhaustive| = " + fmt("%.3g", worst) + " over 1000 radii"};
}

Outcome trace_monotonicity() {
    std::mt19937_64 g(202);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto rest = random_restriction(g);
        const auto draw = RademacherDraw::draw(rest.n(), derive_seed(202, t, kSignStream));
        LocalizationConfig cfg;
        cfg.eps = std::exp(std::log(1e-4) * unif(g));  // log-uniform on [1e-4, 1]
        if (cfg.eps >= 1.0) cfg.eps = 0.5;
        cfg.gamma = 0.05 + 0.9 * unif(g);
        cfg.gamma_prime = 0.05 + 0.9 * unif(g);
        switch (t % 3) {
            case 0: cfg.mode = ConstantsMode::safe; break;
            case 1: cfg.mode = ConstantsMode::unit; break;
            default:
                cfg.mode = ConstantsMode::custom;
                cfg.custom = {0.01 + 3 * unif(g), 0.01 + 3 * unif(g), 0.01 + 3 * unif(g)};
        }
        if (t % 4 == 0) cfg.iteration_override = 1 + static_cast<int>(unif(g) * 12);
        const auto trace = localize(rest, draw, cfg);
        for (std::size_t k = 0; k < trace.values.size(); ++k) {
            const double v = trace.values[k];
            if (!(v > 0.0 && v <= 1.0) || (k > 0 && v > trace.values[k - 1])) {
                ++bad;
                break;
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " of 1000 traces not nonincreasing in (0,1]"};
}

Outcome oracle_dominance() {
    const auto dist = DistributionSpec::uniform(1);
    std::mt19937_64 g(303);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int bad_monotone = 0, bad_cover = 0;
    double slack = 1.0;
    for (int inst = 0; inst < 100; ++inst) {
        double a = unif(g), b = unif(g);
        if (a > b) std::swap(a, b);
        const Interval target = inst % 10 == 0 ? Interval::none() : Interval::closed(a, b);
        const Sample s = draw_sample(dist, 500, derive_seed(303, inst, kSampleStream));
        const auto seq = oracle_sequence(ConceptClass::intervals(), target, s, dist, 6);
        const auto y = evaluate(target, s);
        const double r_min = true_risk(minimal_interval_learner(s, y), target, dist).value;
        const double r_worst = true_risk(worst_consistent_interval(s, y, target, dist), target, dist).value;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (k > 0 && seq[k] > seq[k - 1]) ++bad_monotone;
            if (r_min > seq[k] + 1e-12 || r_worst > seq[k] + 1e-12) ++bad_cover;
            slack = std::min(slack, seq[k] - r_worst);
        }
    }
    return {bad_monotone == 0 && bad_cover == 0,
            std::to_string(bad_monotone) + " increases, " + std::to_string(bad_cover) +
                " risk exceedances; min r_k - worst risk = " + fmt("%.3g", slack)};
}

CoverageConfig coverage_config(LearnerKind learner) {
    CoverageConfig cfg;
    cfg.target = Interval::closed(0.25, 0.75);
    cfg.n = 2000;
    cfg.eps = 0.02;
    cfg.mode = ConstantsMode::safe;
    cfg.gamma = 0.5;
    cfg.gamma_prime = 0.5;
    cfg.reps = 500;
    cfg.master_seed = 404;
    cfg.learner = learner;
    return cfg;
}

Provenance coverage_provenance(const CoverageConfig& c) {
    return {{"command", "coverage"}, {"target", "0.25,0.75"},        {"n", std::to_string(c.n)},
            {"eps", format_real(*c.eps)}, {"constants", "safe"}, {"reps", std::to_string(c.reps)},
            {"seed", std::to_string(c.master_seed)}};
}

RatesConfig rates_config() {
    RatesConfig cfg;
    cfg.cls = RatesClass::intervals;
    cfg.target = Interval::none();
    for (int k = 10; k <= 15; ++k) cfg.n_grid.push_back(std::size_t{1} << k);
    cfg.mode = ConstantsMode::unit;
    cfg.reps = 20;
    cfg.master_seed = 505;
    return cfg;
}

Provenance rates_provenance(const RatesConfig& c) {
    return {{"command", "rates"}, {"class", "intervals"}, {"constants", "unit"},
            {"reps", std::to_string(c.reps)}, {"seed", std::to_string(c.master_seed)}};
}

std::string first_coverage_csv, first_rates_csv;

Outcome coverage_run() {
    std::size_t violations = 0, rows = 0;
    double certificate = 0.0, median_bound = 0.0;
    for (auto learner : {LearnerKind::minimal, LearnerKind::worst_consistent}) {
        const auto cfg = coverage_config(learner);
        const auto report = run_coverage(cfg);
        if (learner == LearnerKind::minimal) {
            first_coverage_csv = coverage_csv(report, coverage_provenance(cfg));
            median_bound = report.bound.median;
        }
        violations += report.violations;
        rows += report.rows.size();
        certificate = std::max(certificate, report.certificate);
    }
    return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(rows) +
                                 " replications (minimal + worst learner), certificate " +
                                 fmt("%.3g", certificate) + ", median bound " + fmt("%.4g", median_bound)};
}

Outcome interval_rate() {
    const auto cfg = rates_config();
    const auto report = run_rates(cfg);
    first_rates_csv = rates_csv(report, rates_provenance(cfg));
    const double slope = *report.slope;
    return {slope >= -1.3 && slope <= -0.7, "slope " + fmt("%.4f", slope) + " (window [-1.3, -0.7])"};
}

Outcome vc_fixed_point() {
    double worst = 0.0;
    for (std::uint64_t delta : {7u, 50u, 1000u}) {
        for (double n : {1e2, 1e4, 1e6}) {
            for (double K : {1.0, 2.0, 12.0}) {
                const auto curve = EntropyCurve::vc(std::log(static_cast<double>(delta)));
                const auto psi = [&](double r) { return entropy_integral(curve, r, IntegralVariant::random, K); };
                const double generic = fixed_point(psi, n).delta;
                const double closed = vc_delta_hat(delta, n, K);
                worst = std::max(worst, std::abs(generic - closed) / closed);
            }
        }
    }
    return {worst <= 1e-8, "max relative difference " + fmt("%.3g", worst)};
}

double fitted_slope(const std::function<double(double)>& delta_of_n) {
    std::vector<std::pair<double, double>> pts;
    for (double n : {1e2, 1e3, 1e4, 1e5, 1e6}) pts.emplace_back(n, delta_of_n(n));
    return rate_exponent_fit(pts).slope;
}

Outcome bracketing_exponents() {
    std::string detail;
    bool ok = true;
    for (double gamma : {0.5, 1.0, 1.5}) {
        const auto curve = EntropyCurve::power(1.0, gamma);
        const double slope = fitted_slope([&](double n) { return bracketing_fixed_point(curve, n).delta; });
        const double want = -2.0 / (2.0 + gamma);
        ok = ok && std::abs(slope - want) <= 0.05;
        detail += "g=" + fmt("%.1f", gamma) + ": " + fmt("%.4f", slope) + " vs " + fmt("%.4f", want) + "; ";
    }
    return {ok, detail};
}

Outcome inclusion_exponents() {
    std::string detail;
    bool ok = true;
    auto check = [&](const std::string& label, double gamma_i, double want) {
        const auto curve = EntropyCurve::power(1.0, gamma_i);
        const double slope = fitted_slope([&](double n) { return inclusion_fixed_point(curve, n).delta; });
        ok = ok && std::abs(slope - want) <= 0.05;
        detail += label + ": " + fmt("%.4f", slope) + " vs " + fmt("%.4f", want) + "; ";
    };
    for (double g : {0.5, 1.0, 2.0}) check("gI=" + fmt("%.1f", g), g, -1.0 / (1.0 + g));
    check("smooth d=2 a=1", smooth_boundary_inclusion_exponent(2, 1.0), -0.5);
    check("convex d=3", convex_inclusion_exponent(3), -2.0 / 4.0);
    return {ok, detail};
}

Outcome ladder_ordering() {
    std::vector<double> radii;
    for (int k = 0; k < 10; ++k) radii.push_back(0.005 * std::pow(200.0, k / 9.0));
    std::size_t bad = 0, total = 0;
    double min_gap12 = 1e300, min_gap23 = 1e300;
    for (std::size_t inst = 0; inst < 50; ++inst) {
        std::mt19937_64 g(derive_seed(909, inst, kSampleStream));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double a = unif(g), b = unif(g);
        if (a > b) std::swap(a, b);
        DiagnoseConfig cfg;
        cfg.target = inst % 5 == 0 ? Interval::none() : Interval::closed(a, b);
        cfg.n = 1000;
        cfg.ladder.eps = 0.02;
        cfg.radii = radii;
        cfg.mc_draws = 200;
        cfg.master_seed = 909;
        cfg.with_phi4 = false;
        for (const auto& row : diagnose_ladder(cfg, inst)) {
            const double p1 = *row.phi[1], p2 = *row.phi[2], p3 = *row.phi[3];
            ++total;
            if (p1 > p2 || p2 > p3) ++bad;
            min_gap12 = std::min(min_gap12, p2 - p1);
            min_gap23 = std::min(min_gap23, p3 - p2);
        }
    }
    return {bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " orderings violated; min phi2-phi1 " +
                          fmt("%.3g", min_gap12) + ", min phi3-phi2 " + fmt("%.3g", min_gap23)};
}

Outcome determinism() {
    // Rerun with a different worker count: streams are keyed by index.
    setenv("LOCRAD_THREADS", "3", 1);
    const auto c = coverage_config(LearnerKind::minimal);
    const std::string cov = coverage_csv(run_coverage(c), coverage_provenance(c));
    const auto r = rates_config();
    const std::string rates = rates_csv(run_rates(r), rates_provenance(r));
    unsetenv("LOCRAD_THREADS");
    const bool same_cov = !first_coverage_csv.empty() && cov == first_coverage_csv;
    const bool same_rates = !first_rates_csv.empty() && rates == first_rates_csv;
    return {same_cov && same_rates, std::string("coverage csv ") + (same_cov ? "identical" : "differs") +
                                        ", rates csv " + (same_rates ? "identical" : "differs")};
}

}  // namespace

int main() {
    criterion(1, "oracle equivalence", 10, oracle_equivalence);
    criterion(2, "trace monotonicity", 30, trace_monotonicity);
    criterion(3, "oracle sequence dominance", 60, oracle_dominance);
    criterion(4, "coverage", 300, coverage_run);
    criterion(5, "interval rate slope", 300, interval_rate);
    criterion(6, "VC fixed point", 1, vc_fixed_point);
    criterion(7, "bracketing exponents", 5, bracketing_exponents);
    criterion(8, "inclusion exponents", 5, inclusion_exponents);
    criterion(9, "ladder ordering", 120, ladder_ordering);
    criterion(10, "determinism", 600, determinism);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
