#pragma once

#include "locrad/concept_class.hpp"
#include "locrad/restriction.hpp"
#include "locrad/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace locrad {

/// Rademacher signs eps_1..eps_n, each exactly +1 or -1.
struct RademacherDraw {
    std::vector<std::int8_t> signs;
    std::uint64_t seed = 0;

    static RademacherDraw draw(std::size_t n, std::uint64_t seed);
    std::size_t size() const noexcept { return signs.size(); }
};

struct ConstantTriple {
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 1.0;
};

enum class ConstantsMode { safe, unit, custom };

/// Constants of the localization map
///   phi(r) = K1 ||R_n||_{B_e(2r)} + K2 sqrt(r eps) + K3 eps.
/// safe:   K from (gamma, gamma') via constants_from_gammas, which carries the
///         coverage guarantee; unit: K = (1, 1, 1); custom: user triple.
struct LocalizationConfig {
    double eps = 0.01;
    double gamma = 0.5;
    double gamma_prime = 0.5;
    ConstantsMode mode = ConstantsMode::safe;
    ConstantTriple custom{};
    /// Number of steps; default_iterations(eps) when unset. Required for eps = 0.
    std::optional<int> iteration_override;

    void validate() const;
    ConstantTriple constants() const;
    int iterations() const;
};

/// r_bar_0 = 1, r_bar_{k+1} = min(phi(r_bar_k), 1), with the norm used at each
/// step. local_norms[k] is ||R_n|| over the empirical ball of radius 2 r_bar_k.
struct BoundTrace {
    std::vector<double> values;
    std::vector<double> local_norms;
    LocalizationConfig config;
    std::uint64_t draw_seed = 0;

    int steps() const noexcept { return static_cast<int>(values.size()) - 1; }
    double final_value() const noexcept { return values.back(); }
};

/// K1 = 2(1+g)/(1-g'), K2 = K1 sqrt(5.4) + 2,
/// K3 = K1 (1.75 + 21.6/g') + 1.75 + 16/g.
ConstantTriple constants_from_gammas(double gamma, double gamma_prime);

/// Evaluates the local norm r -> sup { |n^-1 sum_i eps_i v_i| : mean(v) <= r }
/// for one (restriction, draw) pair, reusing per-draw precomputation across
/// radii. The restriction must outlive the evaluator.
///
/// Explicit vectors: sorted (mean, value) table with a running maximum.
/// Runs without target: O(n) sliding window per radius over the point
/// budget floor(r n). Runs with target: one O(n^2) pass tabulating the best
/// value per symmetric-difference size.
class LocalNormEvaluator {
public:
    LocalNormEvaluator(const SampledRestriction& restriction, const RademacherDraw& draw);

    double operator()(double radius) const;

private:
    double window_norm(std::size_t budget) const;

    const SampledRestriction* restriction_;
    std::size_t n_;
    std::vector<double> table_mean_;
    std::vector<double> table_best_;
    std::vector<long long> group_sum_;
    std::vector<double> best_by_weight_;
};

double local_rademacher_norm(const SampledRestriction& restriction, const RademacherDraw& draw,
                             double radius);

/// Largest integer w <= n with w / n <= r, computed in the same floating
/// arithmetic as a vector mean.
std::size_t max_weight_within(double r, std::size_t n);

/// floor(log2 log2 (1/eps)) + 1, and 1 when eps >= 1/2.
int default_iterations(double eps);

double phi_bar(const SampledRestriction& restriction, const RademacherDraw& draw,
               const LocalizationConfig& config, double r);
double phi_bar(const LocalNormEvaluator& norm, const LocalizationConfig& config, double r);

BoundTrace localize(const SampledRestriction& restriction, const RademacherDraw& draw,
                    const LocalizationConfig& config);

/// 2 N exp(-n eps / 2).
double coverage_certificate(int iterations, std::size_t n, double eps);

inline constexpr int kIterationCap = 8;

struct RiskBoundOptions {
    std::optional<double> eps;       ///< overrides 2 ln(2 N_cap / delta) / n
    std::optional<int> iterations;   ///< overrides min(default_iterations(eps), N_cap)
    ConstantsMode mode = ConstantsMode::safe;
    ConstantTriple custom{};
    double gamma = 0.5;
    double gamma_prime = 0.5;
    std::uint64_t seed = 0;         ///< seed of the Rademacher draw
};

struct RiskBound {
    double bound = 1.0;
    double certificate = 0.0;
    double eps = 0.0;
    int iterations = 0;
    BoundTrace trace;
};

/// eps and N as chosen by risk_bound for a sample of size n.
LocalizationConfig resolve_bound_config(std::size_t n, double delta_conf, const RiskBoundOptions& options);

/// Data-dependent bound on the risk of any consistent estimate, valid with
/// probability at least 1 - certificate.
RiskBound risk_bound(const ConceptClass& cls, std::span<const double> labels, const Sample& sample,
                     double delta_conf, const RiskBoundOptions& options = {});

/// risk_bound on an already reduced restriction.
RiskBound risk_bound_reduced(const SampledRestriction& reduced, double delta_conf,
                             const RiskBoundOptions& options = {});

}  // namespace locrad
