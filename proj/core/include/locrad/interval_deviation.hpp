#pragma once

#include "locrad/concept_class.hpp"
#include "locrad/distribution.hpp"
#include "locrad/sample.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace locrad {

/// A one-dimensional sample and interval target mapped through u = F(x),
/// under which P becomes Lebesgue measure on [0,1] and intervals stay
/// intervals.
struct ProbabilityScale {
    std::vector<double> u;            ///< ascending
    std::vector<std::size_t> order;   ///< sample index of u[k]
    Interval target;

    static ProbabilityScale map(const Sample& sample, const Interval& target,
                                const DistributionSpec& dist);
};

/// sup over D = C xor T, C an interval in [0,1] or empty, |D| <= radius, of
///   sum_{u_k in D} w_k - kappa |D|,
/// where |.| is Lebesgue measure. The supremum is over the closure of the
/// parameter space, so it is a limit value when not attained. kappa < 0
/// requires all weights <= 0, and kappa > 0 with a target requires all
/// weights >= 0.
///
/// The set D splits into a left and a right piece around T (or T plus a
/// disjoint interval). Each piece is a nested one-parameter family, so the
/// supremum is a max-plus convolution of two running-maximum profiles plus
/// sliding-window problems for C disjoint from T and C inside T: O(n log n)
/// per radius.
/// Weights are given in the order of `u_sorted`.
class ReducedIntervalSup {
public:
    ReducedIntervalSup(std::span<const double> u_sorted, std::span<const double> weights, double kappa,
                       const Interval& target);

    double operator()(double radius) const;

private:
    struct Profile {
        std::vector<double> x;     // candidate lengths, ascending, x[0] = 0
        std::vector<double> best;  // running maximum of candidate values
        std::vector<double> d;     // point distances, ascending
        std::vector<double> cum;   // cum[k] = weight of the first k distances
        double kappa = 0.0;
        double max_len = 0.0;

        /// sup over lengths <= len.
        double eval(double len) const;
    };
    struct Window {
        std::vector<double> p;     // distinct point positions in the range
        std::vector<double> cum;   // cum[k] = weight of the first k positions
        double lo = 0.0;
        double hi = 1.0;

        double sup(double budget, double kappa) const;
    };

    static Profile make_profile(std::vector<std::pair<double, double>> dist_weight, double kappa,
                                double max_len);
    static Window make_window(std::vector<std::pair<double, double>> pos_weight, double lo, double hi);
    /// sup of left(L) + right(R) over L + R <= budget.
    static double convolve(const Profile& left, const Profile& right, double budget);

    double kappa_;
    Interval target_;
    double target_value_ = 0.0;  // sum of weights in T minus kappa |T|
    Window below_;
    Window inside_;  // negated weights inside T
    Window above_;
    Profile outer_left_, inner_left_, outer_right_, inner_right_;
};

/// ||P_n - P|| over {|I_C - I_T| : P|I_C - I_T| <= radius}, exact P.
class EmpiricalDeviationSup {
public:
    explicit EmpiricalDeviationSup(const ProbabilityScale& scale);
    double operator()(double radius) const { return std::max(over_(radius), under_(radius)); }

private:
    ReducedIntervalSup over_;
    ReducedIntervalSup under_;
};

/// ||R_n|| over the true ball {|I_C - I_T| : P|I_C - I_T| <= radius}.
class RademacherTrueBallSup {
public:
    /// `signs` are in sample order.
    RademacherTrueBallSup(const ProbabilityScale& scale, std::span<const std::int8_t> signs);
    double operator()(double radius) const { return std::max(plus_(radius), minus_(radius)); }

private:
    ReducedIntervalSup plus_;
    ReducedIntervalSup minus_;
};

}  // namespace locrad
