#include "locrad/distribution.hpp"

#include "locrad/csv.hpp"
#include "locrad/error.hpp"
#include "locrad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace locrad {

DistributionSpec DistributionSpec::uniform(std::size_t dim) {
    if (dim == 0) throw InvalidArgument("distribution dimension must be >= 1");
    DistributionSpec d;
    d.kind_ = DistributionKind::uniform_cube;
    d.dim_ = dim;
    d.breaks_ = {0.0, 1.0};
    d.density_ = {1.0};
    d.mass_below_ = {0.0, 1.0};
    return d;
}

DistributionSpec DistributionSpec::piecewise(std::vector<double> breakpoints, std::vector<double> densities,
                                             std::optional<double> density_bound) {
    if (breakpoints.size() < 2 || densities.size() + 1 != breakpoints.size()) {
        throw InvalidArgument("piecewise density needs k+1 breakpoints for k pieces");
    }
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
        throw InvalidArgument("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) throw InvalidArgument("breakpoints must be strictly increasing");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < densities.size(); ++i) {
        if (!(densities[i] >= 0.0) || !std::isfinite(densities[i])) {
            throw InvalidArgument("densities must be finite and >= 0");
        }
        total += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
    }
    if (!(total > 0.0)) throw InvalidArgument("density integrates to zero");
    for (double& p : densities) p /= total;

    if (density_bound) {
        const double b = *density_bound;
        if (!(b >= 1.0)) throw InvalidArgument("density bound must be >= 1");
        for (double p : densities) {
            if (p < 1.0 / b || p > b) {
                throw InvalidArgument("density " + format_real(p) + " violates the bound B = " + format_real(b));
            }
        }
    }

    DistributionSpec d;
    d.kind_ = DistributionKind::piecewise_1d;
    d.dim_ = 1;
    d.mass_below_.assign(breakpoints.size(), 0.0);
    for (std::size_t i = 0; i < densities.size(); ++i) {
        d.mass_below_[i + 1] = d.mass_below_[i] + densities[i] * (breakpoints[i + 1] - breakpoints[i]);
    }
    d.mass_below_.back() = 1.0;
    d.breaks_ = std::move(breakpoints);
    d.density_ = std::move(densities);
    d.bound_ = density_bound;
    return d;
}

double DistributionSpec::cdf(double x) const {
    if (dim_ != 1) throw DimensionMismatch("cdf needs a one-dimensional distribution");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == DistributionKind::uniform_cube) return x;
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(1.0, mass_below_[i] + density_[i] * (x - breaks_[i]));
}

double DistributionSpec::quantile(double p) const {
    if (dim_ != 1) throw DimensionMismatch("quantile needs a one-dimensional distribution");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in [0,1]");
    if (kind_ == DistributionKind::uniform_cube) return p;
    std::size_t i = static_cast<std::size_t>(std::upper_bound(mass_below_.begin(), mass_below_.end(), p) -
                                             mass_below_.begin());
    i = std::min(i, density_.size()) - 1;
    while (i > 0 && density_[i] == 0.0) --i;
    if (density_[i] == 0.0) return breaks_[i + 1];
    return std::clamp(breaks_[i] + (p - mass_below_[i]) / density_[i], breaks_[i], breaks_[i + 1]);
}

double DistributionSpec::probability(const Interval& c) const {
    if (c.empty) return 0.0;
    return std::max(0.0, cdf(c.hi) - cdf(c.lo));
}

double DistributionSpec::probability(const Box& c) const {
    if (c.sides.size() != dim_) throw DimensionMismatch("box and distribution dimensions differ");
    if (c.empty()) return 0.0;
    if (kind_ == DistributionKind::piecewise_1d) return probability(c.sides.front());
    double p = 1.0;
    for (const auto& s : c.sides) p *= s.length();
    return p;
}

Sample draw_sample(const DistributionSpec& dist, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("sample size must be >= 1");
    Rng rng(seed);
    std::vector<double> coords(n * dist.dim());
    for (double& x : coords) {
        const double u = rng.uniform01();
        x = dist.kind() == DistributionKind::uniform_cube ? u : dist.quantile(u);
    }
    return Sample(std::move(coords), dist.dim(), seed);
}

}  // namespace locrad
