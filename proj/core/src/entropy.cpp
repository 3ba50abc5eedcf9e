#include "locrad/entropy.hpp"

#include "locrad/csv.hpp"
#include "locrad/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace locrad {

EntropyCurve EntropyCurve::tabulated(std::vector<double> u, std::vector<double> h, std::optional<double> below_first) {
    if (u.empty() || u.size() != h.size()) throw InvalidArgument("tabulated curve needs matching, nonempty u and H");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0) || !std::isfinite(u[i])) throw InvalidArgument("entropy grid points must be positive");
        if (i > 0 && !(u[i] > u[i - 1])) throw InvalidArgument("entropy grid must be strictly increasing");
        if (!(h[i] >= 0.0) || !std::isfinite(h[i])) throw InvalidArgument("entropy values must be finite and >= 0");
        if (i > 0 && h[i] > h[i - 1]) throw InvalidArgument("entropy values must be nonincreasing in u");
    }
    const double below = below_first.value_or(h.front());
    if (!(below >= h.front()) || !std::isfinite(below)) {
        throw InvalidArgument("entropy below the first grid point must be finite and >= H(u_0)");
    }
    EntropyCurve c(CurveForm::tabulated);
    c.u_ = std::move(u);
    c.h_ = std::move(h);
    c.below_first_ = below;
    return c;
}

EntropyCurve EntropyCurve::power(double amplitude, double exponent) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw InvalidArgument("power amplitude must be >= 0");
    if (!(exponent >= 0.0) || !std::isfinite(exponent)) throw InvalidArgument("power exponent must be >= 0");
    EntropyCurve c(CurveForm::power);
    c.amplitude_ = amplitude;
    c.exponent_ = exponent;
    return c;
}

EntropyCurve EntropyCurve::vc(double log_delta) {
    if (!(log_delta >= 0.0) || !std::isfinite(log_delta)) throw InvalidArgument("log shatter count must be >= 0");
    EntropyCurve c(CurveForm::vc);
    c.amplitude_ = log_delta;
    return c;
}

EntropyCurve EntropyCurve::zero() { return EntropyCurve(CurveForm::zero); }

EntropyCurve EntropyCurve::with_u_max(double u_max) const {
    if (!(u_max > 0.0)) throw InvalidArgument("u_max must be > 0");
    EntropyCurve c = *this;
    c.u_max_ = u_max;
    return c;
}

double EntropyCurve::operator()(double u) const {
    if (!(u > 0.0)) throw InvalidArgument("entropy is defined for u > 0");
    switch (form_) {
        case CurveForm::zero: return 0.0;
        case CurveForm::vc: return amplitude_;
        case CurveForm::power: return amplitude_ * std::pow(u, -exponent_);
        case CurveForm::tabulated: {
            const auto it = std::upper_bound(u_.begin(), u_.end(), u);
            if (it == u_.begin()) return below_first_;
            return h_[static_cast<std::size_t>(it - u_.begin()) - 1];
        }
    }
    return 0.0;
}

EntropyCurve load_entropy_csv(const std::filesystem::path& path) {
    const auto table = read_numeric_csv(path);
    std::vector<double> u, h;
    for (const auto& row : table.rows) {
        if (row.size() != 2) throw IoError("entropy CSV needs two columns (u, H): " + path.string());
        u.push_back(row[0]);
        h.push_back(row[1]);
    }
    return EntropyCurve::tabulated(std::move(u), std::move(h));
}

EntropyCurve empirical_covering_entropy(const SampledRestriction& restriction, std::span<const double> radii) {
    if (restriction.size() == 0) throw InvalidArgument("covering entropy of an empty restriction");
    if (radii.empty()) throw InvalidArgument("covering entropy needs at least one radius");
    std::vector<double> u(radii.begin(), radii.end());
    for (double x : u) {
        if (!(x > 0.0)) throw InvalidArgument("covering radii must be > 0");
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());

    const auto vecs = restriction.materialize();
    const std::size_t m = vecs.size(), n = restriction.n();
    // Squared distances scaled by n, computed once.
    std::vector<double> d2(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double t = vecs[a][j] - vecs[b][j];
                s += t * t;
            }
            d2[a * m + b] = d2[b * m + a] = s / static_cast<double>(n);
        }
    }
    std::vector<double> h(u.size());
    std::size_t best = m;
    std::vector<char> covered(m);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double lim = u[k] * u[k];
        std::fill(covered.begin(), covered.end(), 0);
        std::size_t centres = 0;
        for (std::size_t a = 0; a < m; ++a) {
            if (covered[a]) continue;
            ++centres;
            for (std::size_t b = a; b < m; ++b) {
                if (d2[a * m + b] <= lim) covered[b] = 1;
            }
        }
        best = std::min(best, centres);
        h[k] = std::log(static_cast<double>(best));
    }
    return EntropyCurve::tabulated(std::move(u), std::move(h));
}

namespace {

double integrand(double h, IntegralVariant variant) {
    return std::sqrt(variant == IntegralVariant::bracketing ? h + 1.0 : h);
}

}  // namespace

double entropy_integral(const EntropyCurve& curve, double r, IntegralVariant variant, double K) {
    if (!(r >= 0.0)) throw InvalidArgument("integral upper limit must be >= 0");
    if (r > curve.u_max()) throw InvalidArgument("integral upper limit exceeds the curve's domain");
    if (!(K > 0.0)) throw InvalidArgument("chaining constant must be > 0");
    if (r == 0.0) return 0.0;
    switch (curve.form()) {
        case CurveForm::zero: return K * integrand(0.0, variant) * r;
        case CurveForm::vc: return K * integrand(curve.amplitude(), variant) * r;
        case CurveForm::tabulated: {
            const auto& u = curve.grid();
            const auto& h = curve.values();
            double total = integrand(curve.below_first(), variant) * std::min(r, u.front());
            for (std::size_t i = 0; i < u.size() && u[i] < r; ++i) {
                const double end = i + 1 < u.size() ? std::min(r, u[i + 1]) : r;
                total += integrand(h[i], variant) * (end - u[i]);
            }
            return K * total;
        }
        case CurveForm::power: {
            const double a = curve.amplitude(), g = curve.exponent();
            if (a == 0.0) return K * integrand(0.0, variant) * r;
            if (g == 0.0) return K * integrand(a, variant) * r;
            if (g >= 2.0) {
                throw DivergentIntegral("entropy integral diverges for exponent " + format_real(g) + " >= 2");
            }
            if (variant == IntegralVariant::random) {
                return K * std::sqrt(a) * std::pow(r, 1.0 - g / 2.0) / (1.0 - g / 2.0);
            }
            // u = s^p removes the singularity: du (a u^-g + 1)^1/2 = p (a + s^q)^1/2 ds
            // with q = p g. s = t^m, m q >= 4, then smooths the integrand at 0.
            const double p = 2.0 / (2.0 - g);
            const double q = p * g;
            const int m = static_cast<int>(std::clamp(std::ceil(4.0 / q), 1.0, 256.0));
            const double top = std::pow(r, 1.0 / (p * m));
            auto f = [&](double t) { return std::pow(t, m - 1) * std::sqrt(a + std::pow(t, m * q)); };
            const double val = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, top, 15, 1e-13);
            return K * p * m * val;
        }
    }
    return 0.0;
}

FixedPointResult fixed_point(const std::function<double(double)>& psi, double n, double tol, int max_iterations) {
    if (!(n > 0.0)) throw InvalidArgument("fixed point needs n > 0");
    if (!(tol > 0.0)) throw InvalidArgument("fixed point tolerance must be > 0");
    const double rn = std::sqrt(n);
    auto step = [&](double d) { return psi(std::sqrt(d)) / rn; };

    FixedPointResult out;
    double d = 1.0;
    int raises = 0;
    while (step(d) > d) {
        if (++raises > 1000) throw NotConverged("fixed point: no upper start found");
        d *= 2.0;
    }
    for (int it = 1; it <= max_iterations; ++it) {
        const double next = step(d);
        if (!(next > 0.0)) throw NotConverged("fixed point iteration reached 0; psi vanishes near 0");
        const bool done = std::abs(next - d) <= tol * next;
        d = next;
        if (done) {
            out.delta = d;
            out.psi_at_sqrt_delta = psi(std::sqrt(d));
            out.residual = std::abs(d - out.psi_at_sqrt_delta / rn) / d;
            out.iterations = it;
            return out;
        }
    }
    throw NotConverged("fixed point did not converge in " + std::to_string(max_iterations) + " iterations");
}

FixedPointResult entropy_balance_fixed_point(const EntropyCurve& curve, double n, double tol) {
    if (!(n > 0.0)) throw InvalidArgument("fixed point needs n > 0");
    auto gap = [&](double d) { return d - (curve(std::sqrt(d)) + 1.0) / n; };
    double hi = 1.0;
    int guard = 0;
    while (gap(hi) < 0.0) {
        if (++guard > 2000) throw NotConverged("entropy balance: no upper bracket");
        hi *= 2.0;
    }
    double lo = hi;
    guard = 0;
    while (gap(lo) >= 0.0) {
        if (++guard > 2000) throw NotConverged("entropy balance: no lower bracket");
        lo /= 2.0;
    }
    int it = 0;
    while (hi - lo > tol * hi) {
        if (++it > 10000) throw NotConverged("entropy balance bisection stalled");
        const double mid = std::sqrt(lo * hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    FixedPointResult out;
    out.delta = hi;
    out.psi_at_sqrt_delta = curve(std::sqrt(hi)) + 1.0;
    out.residual = std::abs(gap(hi)) / hi;
    out.iterations = it;
    out.method = FixedPointMethod::entropy_balance;
    return out;
}

FixedPointResult bracketing_fixed_point(const EntropyCurve& curve, double n, double tol) {
    return fixed_point(
        [&](double r) { return entropy_integral(curve, r, IntegralVariant::bracketing, 1.0); }, n, tol);
}

FixedPointResult random_fixed_point(const EntropyCurve& curve, double n, double K, double tol) {
    return fixed_point([&](double r) { return entropy_integral(curve, r, IntegralVariant::random, K); }, n, tol);
}

double vc_delta_hat(std::uint64_t shatter, double n, double K) {
    if (shatter == 0) throw InvalidArgument("shatter count must be >= 1");
    if (!(n > 0.0)) throw InvalidArgument("n must be > 0");
    return K * K * std::log(static_cast<double>(shatter)) / n;
}

EntropyCurve inclusion_to_bracketing(const EntropyCurve& inclusion, double density_bound) {
    if (!(density_bound >= 1.0)) throw InvalidArgument("density bound must be >= 1");
    const double b = density_bound;
    EntropyCurve out = inclusion;
    switch (inclusion.form()) {
        case CurveForm::zero:
        case CurveForm::vc: break;
        case CurveForm::power:
            out = EntropyCurve::power(inclusion.amplitude() * std::pow(b, inclusion.exponent()),
                                      2.0 * inclusion.exponent());
            break;
        case CurveForm::tabulated: {
            std::vector<double> u = inclusion.grid();
            for (double& x : u) x = std::sqrt(b * x);
            out = EntropyCurve::tabulated(std::move(u), inclusion.values(), inclusion.below_first());
            break;
        }
    }
    if (std::isfinite(inclusion.u_max())) out = out.with_u_max(std::sqrt(b * inclusion.u_max()));
    return out;
}

FixedPointResult inclusion_fixed_point(const EntropyCurve& inclusion, double n, double density_bound, double tol) {
    const EntropyCurve bracket = inclusion_to_bracketing(inclusion, density_bound);
    if (bracket.form() == CurveForm::power && bracket.amplitude() > 0.0 && bracket.exponent() >= 2.0) {
        return entropy_balance_fixed_point(bracket, n, tol);
    }
    return bracketing_fixed_point(bracket, n, tol);
}

double smooth_boundary_inclusion_exponent(std::size_t d, double alpha) {
    if (d == 0) throw InvalidArgument("dimension must be >= 1");
    if (!(alpha > 0.0)) throw InvalidArgument("smoothness must be > 0");
    return static_cast<double>(d - 1) / alpha;
}

double convex_inclusion_exponent(std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension must be >= 1");
    return static_cast<double>(d - 1) / 2.0;
}

RateFit rate_exponent_fit(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 3) throw InvalidArgument("rate fit needs at least 3 points");
    std::vector<double> x, y;
    for (const auto& [n, d] : pairs) {
        if (!(n > 0.0) || !(d > 0.0)) throw InvalidArgument("rate fit needs positive (n, delta) pairs");
        x.push_back(std::log(n));
        y.push_back(std::log(d));
    }
    const double k = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("rate fit needs at least two distinct n");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += e * e;
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

}  // namespace locrad
