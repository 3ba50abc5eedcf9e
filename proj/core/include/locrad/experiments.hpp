#pragma once

#include "locrad/concentration.hpp"
#include "locrad/concept_class.hpp"
#include "locrad/distribution.hpp"
#include "locrad/rademacher.hpp"
#include "locrad/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace locrad {

/// r_0 = 1, r_{k+1} = ||P_n - P|| over {f in F(f0) : P f <= r_k}, for the
/// interval class with exact P. Throws InvalidArgument for other classes or
/// multivariate P.
std::vector<double> oracle_sequence(const ConceptClass& cls, const Interval& target, const Sample& sample,
                                    const DistributionSpec& dist, int k_max);

enum class LearnerKind { minimal, worst_consistent };

struct CoverageConfig {
    Interval target = Interval::none();
    DistributionSpec dist = DistributionSpec::uniform(1);
    std::size_t n = 1000;
    std::optional<double> eps;         ///< when unset, chosen from delta_conf
    double delta_conf = 0.05;
    std::optional<int> iterations;
    ConstantsMode mode = ConstantsMode::safe;
    ConstantTriple custom{};
    double gamma = 0.5;
    double gamma_prime = 0.5;
    std::size_t reps = 100;
    std::uint64_t master_seed = 1;
    LearnerKind learner = LearnerKind::minimal;
};

struct ReplicationResult {
    std::size_t rep = 0;
    std::size_t n = 0;
    double eps = 0.0;
    int iterations = 0;
    double bound = 1.0;
    double true_risk = 0.0;
    bool violated = false;
    std::uint64_t sample_seed = 0;
    std::uint64_t sign_seed = 0;
    BoundTrace trace;
};

struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q95 = 0.0;
};
Summary summarize(std::vector<double> values);

struct RatesRow {
    std::size_t n = 0;
    double eps = 0.0;
    int iterations = 0;
    double bound_median = 0.0;
    double risk_median = 0.0;
};

struct ExperimentReport {
    std::vector<ReplicationResult> rows;
    std::size_t violations = 0;
    double violation_frequency = 0.0;
    double certificate = 0.0;  ///< largest 2 N e^{-n eps/2} over rows
    double tolerance = 0.0;    ///< certificate + 3 sqrt(c(1-c)/reps) + 1/reps
    Summary bound;
    Summary risk;
    std::vector<RatesRow> rates;  ///< rate runs only
    std::optional<double> slope;  ///< fitted ln(median bound) vs ln(n)
    std::optional<double> slope_r2;
};

/// Monte Carlo resolution of the coverage guarantee.
double coverage_tolerance(double certificate, std::size_t reps);

/// Replications of (sample, labels, consistent estimate, bound, exact risk)
/// for the interval class. Replication i draws its sample from stream
/// derive_seed(master, i, kSampleStream) and its signs from kSignStream.
ExperimentReport run_coverage(const CoverageConfig& config);

enum class RatesClass { intervals, zero };

struct RatesConfig {
    RatesClass cls = RatesClass::intervals;
    Interval target = Interval::none();
    DistributionSpec dist = DistributionSpec::uniform(1);
    std::vector<std::size_t> n_grid;
    std::optional<double> eps;  ///< fixed eps; default 2 ln(n) / n per n
    std::optional<int> iterations;
    ConstantsMode mode = ConstantsMode::unit;
    ConstantTriple custom{};
    double gamma = 0.5;
    double gamma_prime = 0.5;
    std::size_t reps = 20;
    std::uint64_t master_seed = 1;
};

/// Median bound per n and the fitted slope; needs >= 4 strictly
/// increasing grid sizes. Replication j of grid point g uses index
/// g * reps + j in derive_seed.
ExperimentReport run_rates(const RatesConfig& config);

struct DiagnoseConfig {
    Interval target = Interval::none();
    DistributionSpec dist = DistributionSpec::uniform(1);
    std::size_t n = 1000;
    LadderParams ladder{};
    std::vector<double> radii;
    std::size_t mc_draws = 200;
    std::uint64_t master_seed = 1;
    /// phi4 needs E_eps ||R_n|| over the empirical ball, O(mc_draws n^2) with a target.
    bool with_phi4 = true;
};

struct DiagnoseRow {
    double r = 0.0;
    LadderInputs inputs;
    PhiLadder phi;
};

/// Ladder inputs and phi1..phi6 on one interval instance. The instance
/// sample and signs come from derive_seed(master, instance, .); the Monte
/// Carlo expectations use seeds derived from derive_seed(master, instance,
/// kMonteCarloStream). The phi3 norm is taken over the true ball B(r).
std::vector<DiagnoseRow> diagnose_ladder(const DiagnoseConfig& config, std::size_t instance = 0);

}  // namespace locrad
