#pragma once

#include "locrad/restriction.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace locrad {

enum class CurveForm { tabulated, power, vc, zero };

/// Metric entropy u -> H(u) on (0, u_max], nonnegative and nonincreasing.
class EntropyCurve {
public:
    /// Step function: H(u) = h[i] on [u[i], u[i+1]), h[0] below u[0] unless
    /// `below_first` is given.
    static EntropyCurve tabulated(std::vector<double> u, std::vector<double> h,
                                  std::optional<double> below_first = std::nullopt);
    /// H(u) = amplitude * u^-exponent.
    static EntropyCurve power(double amplitude, double exponent);
    /// H(u) = log_delta for all u.
    static EntropyCurve vc(double log_delta);
    static EntropyCurve zero();

    CurveForm form() const noexcept { return form_; }
    double operator()(double u) const;
    double u_max() const noexcept { return u_max_; }

    double amplitude() const noexcept { return amplitude_; }
    double exponent() const noexcept { return exponent_; }
    const std::vector<double>& grid() const noexcept { return u_; }
    const std::vector<double>& values() const noexcept { return h_; }
    double below_first() const noexcept { return below_first_; }

    /// Copy with the domain bound moved (tabulated curves keep their grid).
    EntropyCurve with_u_max(double u_max) const;

private:
    explicit EntropyCurve(CurveForm form) : form_(form) {}

    CurveForm form_;
    double amplitude_ = 0.0;
    double exponent_ = 0.0;
    std::vector<double> u_;
    std::vector<double> h_;
    double below_first_ = 0.0;
    double u_max_ = std::numeric_limits<double>::infinity();
};

EntropyCurve load_entropy_csv(const std::filesystem::path& path);

/// log of a greedy cover count under d(v,w) = (n^-1 sum (v_j - w_j)^2)^1/2,
/// made monotone by carrying the smallest count over increasing radii.
EntropyCurve empirical_covering_entropy(const SampledRestriction& restriction,
                                        std::span<const double> radii);

enum class IntegralVariant {
    random,      ///< K int_0^r H(u)^1/2 du
    bracketing,  ///< K int_0^r (H(u) + 1)^1/2 du
};

/// Closed forms for zero, vc, tabulated and random-variant power curves;
/// adaptive Gauss-Kronrod after the substitutions u = s^(2/(2-gamma)) and
/// s = t^m for bracketing power curves. Throws DivergentIntegral for power exponents >= 2.
double entropy_integral(const EntropyCurve& curve, double r, IntegralVariant variant, double K = 1.0);

inline constexpr double kDefaultChainingConstant = 12.0;
inline constexpr double kDefaultFixedPointTol = 1e-10;

enum class FixedPointMethod { integral_iteration, entropy_balance };

struct FixedPointResult {
    double delta = 0.0;
    double residual = 0.0;  ///< |delta - n^-1/2 psi(sqrt delta)| / delta
    int iterations = 0;
    double psi_at_sqrt_delta = 0.0;
    FixedPointMethod method = FixedPointMethod::integral_iteration;
};

/// Positive solution of delta = n^-1/2 psi(sqrt delta) for concave
/// nondecreasing psi with psi(0) = 0, by the monotone iteration from
/// delta_0 = 1 (raised by doubling until the first step does not increase).
FixedPointResult fixed_point(const std::function<double(double)>& psi, double n,
                             double tol = kDefaultFixedPointTol, int max_iterations = 100000);

/// Solution of delta = (H(sqrt delta) + 1) / n by bisection on log delta. This
/// is the fixed point of the lower bound r (H(r) + 1)^1/2 of the bracketing
/// integral, and stays finite when the integral diverges.
FixedPointResult entropy_balance_fixed_point(const EntropyCurve& curve, double n,
                                             double tol = kDefaultFixedPointTol);

/// Fixed point of the bracketing integral of `curve`.
FixedPointResult bracketing_fixed_point(const EntropyCurve& curve, double n,
                                        double tol = kDefaultFixedPointTol);

/// Fixed point of the random entropy integral with constant K.
FixedPointResult random_fixed_point(const EntropyCurve& curve, double n, double K,
                                    double tol = kDefaultFixedPointTol);

/// K^2 log(shatter) / n.
double vc_delta_hat(std::uint64_t shatter, double n, double K);

/// H_[](u) = H_I(u^2 / B): inclusion brackets of Lebesgue size lam have
/// L2(P) width at most (B lam)^1/2 under a density bounded by B.
EntropyCurve inclusion_to_bracketing(const EntropyCurve& inclusion, double density_bound = 1.0);

/// Fixed point for inclusion entropy: bracketing integral of the converted
/// curve when it converges, entropy balance otherwise.
FixedPointResult inclusion_fixed_point(const EntropyCurve& inclusion, double n,
                                       double density_bound = 1.0,
                                       double tol = kDefaultFixedPointTol);

/// (d-1)/alpha for sets with alpha-smooth boundary in [0,1]^d.
double smooth_boundary_inclusion_exponent(std::size_t d, double alpha);
/// (d-1)/2 for closed convex subsets of [0,1]^d.
double convex_inclusion_exponent(std::size_t d);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least-squares fit of ln(delta) on ln(n); needs >= 3 positive pairs.
RateFit rate_exponent_fit(std::span<const std::pair<double, double>> pairs);

}  // namespace locrad
