#include <doctest.h>

#include "locrad/distribution.hpp"
#include "locrad/interval_deviation.hpp"
#include "locrad/rng.hpp"
#include "oracles/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace locrad;

namespace {

struct Case {
    std::vector<double> u;
    std::vector<double> w;
    double kappa;
    Interval target;
};

oracle::IntervalProblem problem_of(const Case& c) {
    oracle::IntervalProblem p;
    p.u = c.u;
    p.w = c.w;
    p.kappa = c.kappa;
    p.has_target = !c.target.empty;
    p.t1 = c.target.lo;
    p.t2 = c.target.hi;
    return p;
}

Case random_case(std::mt19937_64& g, int mode, bool with_target) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> size(1, 9);
    Case c;
    const int n = size(g);
    for (int i = 0; i < n; ++i) c.u.push_back(unif(g));
    std::sort(c.u.begin(), c.u.end());
    const double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        if (mode == 0) c.w.push_back(inv);
        else if (mode == 1) c.w.push_back(-inv);
        else c.w.push_back(unif(g) < 0.5 ? inv : -inv);
    }
    c.kappa = mode == 0 ? 1.0 : mode == 1 ? -1.0 : 0.0;
    if (with_target) {
        double a = unif(g), b = unif(g);
        if (a > b) std::swap(a, b);
        c.target = Interval::closed(a, b);
    }
    return c;
}

}  // namespace

TEST_CASE("interval sup without points") {
    const std::vector<double> none;
    ReducedIntervalSup over(none, none, 1.0, Interval::none());
    CHECK(over(0.5) == 0.0);
    ReducedIntervalSup under(none, none, -1.0, Interval::none());
    CHECK(under(0.3) == doctest::Approx(0.3));
    CHECK(under(2.0) == doctest::Approx(1.0));
    ReducedIntervalSup with_t(none, none, -1.0, Interval::closed(0.2, 0.6));
    // The largest C xor T is [0.2, 1], from C = [0.6, 1].
    CHECK(with_t(0.3) == doctest::Approx(0.3));
    CHECK(with_t(1.0) == doctest::Approx(0.8));
}

TEST_CASE("interval sup hand examples") {
    // One point at 0.5 with weight 1, kappa 1: a degenerate interval at the point.
    const std::vector<double> u{0.5}, w{1.0};
    ReducedIntervalSup s(u, w, 1.0, Interval::none());
    CHECK(s(0.0) == doctest::Approx(1.0));
    CHECK(s(0.2) == doctest::Approx(1.0));

    // Target [0.4, 0.6] holds the negative point, so the best D keeps it out.
    const std::vector<double> wn{-1.0};
    ReducedIntervalSup t(u, wn, 0.0, Interval::closed(0.4, 0.6));
    CHECK(t(0.0) == 0.0);
    CHECK(t(0.1) == 0.0);
    CHECK(t(1.0) == 0.0);
}

TEST_CASE("interval sup matches the exhaustive search") {
    std::mt19937_64 g(20240611);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int checked = 0;
    for (int mode = 0; mode < 3; ++mode) {
        for (int t = 0; t < 2; ++t) {
            for (int rep = 0; rep < 150; ++rep) {
                const Case c = random_case(g, mode, t == 1);
                const auto p = problem_of(c);
                ReducedIntervalSup fast(c.u, c.w, c.kappa, c.target);
                std::vector<double> radii{0.0, 1.0, 1.5, unif(g), unif(g) * 0.2, c.target.length()};
                for (double r : radii) {
                    const double want = p.sup(r);
                    const double got = fast(r);
                    INFO("mode=" << mode << " target=" << t << " rep=" << rep << " r=" << r);
                    CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(1.0));
                    ++checked;
                }
            }
        }
    }
    CHECK(checked == 3 * 2 * 150 * 6);
}

TEST_CASE("tied points") {
    // Two points at 0.5 with weight 1/2 each, kappa 1: degenerate interval takes both.
    const std::vector<double> u{0.3, 0.5, 0.5}, w{-1.0, 0.5, 0.5};
    ReducedIntervalSup s(u, w, 1.0, Interval::none());
    CHECK(s(0.0) == doctest::Approx(1.0));
    CHECK(s(1.0) == doctest::Approx(1.0));

    // Target [0.5, 0.7] starts at the tie. C = [0.3, 0.7] adds 0.3 and keeps the pair out.
    const std::vector<double> wn{0.25, -0.5, -0.5};
    ReducedIntervalSup t(u, wn, 0.0, Interval::closed(0.5, 0.7));
    CHECK(t(0.2) == doctest::Approx(0.25));
    CHECK(t(0.19) == doctest::Approx(0.0));
    CHECK(t(0.0) == doctest::Approx(0.0));
}

TEST_CASE("probability scale maps through the cdf") {
    const auto dist = DistributionSpec::piecewise({0.0, 0.5, 1.0}, {1.5, 0.5});
    const auto sample = Sample::from_values({0.75, 0.25, 0.5});
    const auto scale = ProbabilityScale::map(sample, Interval::closed(0.25, 0.75), dist);
    REQUIRE(scale.u.size() == 3);
    CHECK(scale.u[0] == doctest::Approx(0.375));
    CHECK(scale.u[1] == doctest::Approx(0.75));
    CHECK(scale.u[2] == doctest::Approx(0.875));
    CHECK(scale.order == std::vector<std::size_t>{1, 2, 0});
    CHECK(scale.target.lo == doctest::Approx(0.375));
    CHECK(scale.target.hi == doctest::Approx(0.875));
}

TEST_CASE("empirical deviation and Rademacher true-ball sups") {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto dist = DistributionSpec::uniform(1);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rep % 7;
        std::vector<double> x;
        for (std::size_t i = 0; i < n; ++i) x.push_back(unif(g));
        double a = unif(g), b = unif(g);
        if (a > b) std::swap(a, b);
        const Interval target = rep % 3 == 0 ? Interval::none() : Interval::closed(a, b);
        const auto scale = ProbabilityScale::map(Sample::from_values(x), target, dist);
        std::vector<std::int8_t> s(n);
        for (auto& v : s) v = unif(g) < 0.5 ? 1 : -1;

        EmpiricalDeviationSup dev(scale);
        RademacherTrueBallSup rad(scale, s);

        oracle::IntervalProblem p;
        p.u = scale.u;
        p.has_target = !target.empty;
        p.t1 = scale.target.lo;
        p.t2 = scale.target.hi;
        const double inv = 1.0 / static_cast<double>(n);
        for (double r : {0.05, 0.3, 1.0}) {
            p.kappa = 1.0;
            p.w.assign(n, inv);
            const double over = p.sup(r);
            p.kappa = -1.0;
            p.w.assign(n, -inv);
            const double under = p.sup(r);
            CHECK(dev(r) == doctest::Approx(std::max(over, under)).epsilon(1e-12));

            p.kappa = 0.0;
            p.w.resize(n);
            for (std::size_t k = 0; k < n; ++k) p.w[k] = s[scale.order[k]] * inv;
            const double plus = p.sup(r);
            for (auto& v : p.w) v = -v;
            const double minus = p.sup(r);
            CHECK(rad(r) == doctest::Approx(std::max(plus, minus)).epsilon(1e-12));
        }
    }
}
