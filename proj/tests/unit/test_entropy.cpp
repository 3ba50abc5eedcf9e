#include <doctest.h>

#include "locrad/entropy.hpp"
#include "locrad/error.hpp"
#include "locrad/restriction.hpp"

#include <cmath>
#include <vector>

using namespace locrad;

TEST_CASE("curve construction and evaluation") {
    const auto t = EntropyCurve::tabulated({0.1, 0.3}, {2.0, 1.0}, 3.0);
    CHECK(t(0.05) == 3.0);
    CHECK(t(0.1) == 2.0);
    CHECK(t(0.2) == 2.0);
    CHECK(t(0.3) == 1.0);
    CHECK(t(0.9) == 1.0);
    CHECK(EntropyCurve::tabulated({0.1}, {2.0})(0.01) == 2.0);
    CHECK(EntropyCurve::power(2.0, 0.5)(0.25) == doctest::Approx(4.0));
    CHECK(EntropyCurve::vc(1.5)(0.7) == 1.5);
    CHECK(EntropyCurve::zero()(0.7) == 0.0);

    CHECK_THROWS_AS(EntropyCurve::tabulated({0.3, 0.1}, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(EntropyCurve::tabulated({0.1, 0.3}, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(EntropyCurve::tabulated({0.1}, {-1.0}), InvalidArgument);
    CHECK_THROWS_AS(EntropyCurve::power(1.0, -1.0), InvalidArgument);
    CHECK_THROWS_AS(t(0.0), InvalidArgument);
}

TEST_CASE("empirical covering entropy") {
    const std::vector<double> radii{0.2, 0.6, 2.0};
    const auto one = SampledRestriction::from_vectors(4, {{1, 0, 1, 0}});
    const auto h1 = empirical_covering_entropy(one, radii);
    for (double u : radii) CHECK(h1(u) == 0.0);

    // d((0,0,0,0), (1,0,0,0)) = (1/4)^1/2 = 0.5.
    const auto two = SampledRestriction::from_vectors(4, {{0, 0, 0, 0}, {1, 0, 0, 0}});
    const auto h2 = empirical_covering_entropy(two, radii);
    CHECK(h2(0.2) == doctest::Approx(std::log(2.0)));
    CHECK(h2(0.6) == 0.0);
    CHECK(h2(2.0) == 0.0);

    // Interval class: entropy is nonincreasing and bounded by log of the count.
    std::vector<double> x;
    for (int i = 0; i < 12; ++i) x.push_back((i + 0.5) / 12.0);
    const auto r = restrict(ConceptClass::intervals(), Sample::from_values(x));
    const std::vector<double> grid{0.05, 0.1, 0.2, 0.4, 0.8};
    const auto h = empirical_covering_entropy(r, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(h(grid[i]) <= std::log(static_cast<double>(r.size())) + 1e-12);
        if (i > 0) CHECK(h(grid[i]) <= h(grid[i - 1]));
    }
    CHECK_THROWS_AS(empirical_covering_entropy(r, std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(empirical_covering_entropy(r, std::vector<double>{-0.1}), InvalidArgument);
}

TEST_CASE("entropy integrals") {
    CHECK(entropy_integral(EntropyCurve::zero(), 0.37, IntegralVariant::bracketing) == doctest::Approx(0.37));
    CHECK(entropy_integral(EntropyCurve::vc(std::log(7.0)), 0.5, IntegralVariant::random) ==
          doctest::Approx(0.69747941708972913).epsilon(1e-14));
    CHECK(entropy_integral(EntropyCurve::power(1.0, 1.0), 0.25, IntegralVariant::random) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(entropy_integral(EntropyCurve::power(2.0, 0.5), 0.3, IntegralVariant::bracketing) ==
          doctest::Approx(0.82436886219062422).epsilon(1e-12));
    CHECK(entropy_integral(EntropyCurve::power(1.0, 1.5), 0.2, IntegralVariant::bracketing) ==
          doctest::Approx(2.6918511955145133).epsilon(1e-12));
    CHECK(entropy_integral(EntropyCurve::power(1.0, 0.2), 0.3, IntegralVariant::bracketing) ==
          doctest::Approx(0.48161462507876802).epsilon(1e-13));
    CHECK(entropy_integral(EntropyCurve::power(2.0, 0.0), 0.3, IntegralVariant::bracketing) ==
          doctest::Approx(std::sqrt(3.0) * 0.3));
    const auto t = EntropyCurve::tabulated({0.1, 0.3}, {3.0, 1.0}, 3.0);
    CHECK(entropy_integral(t, 0.5, IntegralVariant::bracketing) ==
          doctest::Approx(2.0 * 0.1 + std::sqrt(4.0) * 0.2 + std::sqrt(2.0) * 0.2));
    CHECK(entropy_integral(EntropyCurve::vc(2.0), 0.5, IntegralVariant::random, 12.0) ==
          doctest::Approx(12.0 * std::sqrt(2.0) * 0.5));

    CHECK_THROWS_AS(entropy_integral(EntropyCurve::power(1.0, 2.0), 0.5, IntegralVariant::bracketing),
                    DivergentIntegral);
    CHECK_THROWS_AS(entropy_integral(EntropyCurve::power(1.0, 2.5), 0.5, IntegralVariant::random),
                    DivergentIntegral);
    CHECK_THROWS_AS(entropy_integral(EntropyCurve::zero().with_u_max(0.5), 0.6, IntegralVariant::random),
                    InvalidArgument);
}

TEST_CASE("entropy integrals are concave and nondecreasing") {
    for (const auto& c : {EntropyCurve::power(1.0, 1.0), EntropyCurve::power(0.5, 1.8),
                          EntropyCurve::tabulated({0.1, 0.2, 0.4}, {3.0, 2.0, 0.5}, 5.0)}) {
        for (auto v : {IntegralVariant::random, IntegralVariant::bracketing}) {
            std::vector<double> y;
            for (int i = 0; i <= 40; ++i) y.push_back(entropy_integral(c, 0.02 * i, v));
            for (std::size_t i = 1; i < y.size(); ++i) CHECK(y[i] >= y[i - 1]);
            for (std::size_t i = 1; i + 1 < y.size(); ++i) CHECK(y[i + 1] - 2 * y[i] + y[i - 1] <= 1e-12);
        }
    }
}

TEST_CASE("generic fixed point") {
    const auto lin = fixed_point([](double r) { return r; }, 100.0);
    CHECK(lin.delta == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(lin.residual <= 1e-9);
    const auto root = fixed_point([](double r) { return std::sqrt(r); }, 64.0);
    CHECK(root.delta == doctest::Approx(0.0625).epsilon(1e-9));
    // Needs raising the start: psi(1) / sqrt(n) > 1.
    const auto steep = fixed_point([](double r) { return 50.0 * r; }, 4.0);
    CHECK(steep.delta == doctest::Approx(625.0).epsilon(1e-9));
    CHECK_THROWS_AS(fixed_point([](double) { return 0.0; }, 10.0), NotConverged);
}

TEST_CASE("VC fixed point") {
    CHECK(vc_delta_hat(7, 100, 1.0) == doctest::Approx(0.019459101490553132).epsilon(1e-14));
    CHECK(vc_delta_hat(1, 100, 1.0) == 0.0);
    CHECK_THROWS_AS(vc_delta_hat(0, 100, 1.0), InvalidArgument);
    const double fp = random_fixed_point(EntropyCurve::vc(std::log(50.0)), 1000, 2.0).delta;
    CHECK(fp == doctest::Approx(vc_delta_hat(50, 1000, 2.0)).epsilon(1e-8));
    CHECK(fp == doctest::Approx(0.015648092021712584).epsilon(1e-8));
}

TEST_CASE("bracketing fixed point") {
    const auto fp = bracketing_fixed_point(EntropyCurve::power(1.0, 1.0), 1000);
    CHECK(fp.delta == doctest::Approx(0.026085941703809947).epsilon(1e-8));
    CHECK(fp.residual <= 1e-8);
    CHECK(fp.method == FixedPointMethod::integral_iteration);
}

TEST_CASE("inclusion entropy conversion") {
    const auto b = inclusion_to_bracketing(EntropyCurve::power(1.0, 0.7));
    CHECK(b.form() == CurveForm::power);
    CHECK(b.exponent() == doctest::Approx(1.4));
    CHECK(b.amplitude() == doctest::Approx(1.0));
    const auto b4 = inclusion_to_bracketing(EntropyCurve::power(1.0, 0.7), 4.0);
    for (double u : {0.1, 0.3}) CHECK(b4(u) == doctest::Approx(std::pow(u * u / 4.0, -0.7)));
    const auto tab = inclusion_to_bracketing(EntropyCurve::tabulated({0.04, 0.25}, {2.0, 1.0}), 4.0);
    CHECK(tab.grid()[0] == doctest::Approx(0.4));
    CHECK(tab.grid()[1] == doctest::Approx(1.0));
    CHECK(inclusion_to_bracketing(EntropyCurve::vc(3.0))(0.2) == 3.0);
    CHECK_THROWS_AS(inclusion_to_bracketing(EntropyCurve::zero(), 0.5), InvalidArgument);

    CHECK(inclusion_fixed_point(EntropyCurve::power(1.0, 0.5), 1e4).method == FixedPointMethod::integral_iteration);
    const auto bal = inclusion_fixed_point(EntropyCurve::power(1.0, 1.0), 1e4);
    CHECK(bal.method == FixedPointMethod::entropy_balance);
    CHECK(bal.delta == doctest::Approx((std::pow(bal.delta, -1.0) + 1.0) / 1e4).epsilon(1e-9));

    CHECK(smooth_boundary_inclusion_exponent(2, 1.0) == 1.0);
    CHECK(smooth_boundary_inclusion_exponent(3, 4.0) == 0.5);
    CHECK(convex_inclusion_exponent(3) == 1.0);
}

TEST_CASE("rate exponent fits") {
    std::vector<std::pair<double, double>> inv{{10, 0.1}, {100, 0.01}, {1000, 0.001}};
    const auto f = rate_exponent_fit(inv);
    CHECK(f.slope == doctest::Approx(-1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    std::vector<std::pair<double, double>> two3;
    for (double n : {10.0, 100.0, 1000.0}) two3.emplace_back(n, std::pow(n, -2.0 / 3.0));
    CHECK(rate_exponent_fit(two3).slope == doctest::Approx(-2.0 / 3.0));

    std::vector<std::pair<double, double>> fps;
    for (double n : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        fps.emplace_back(n, bracketing_fixed_point(EntropyCurve::power(1.0, 1.0), n).delta);
    }
    CHECK(std::abs(rate_exponent_fit(fps).slope + 2.0 / 3.0) <= 0.02);

    CHECK_THROWS_AS(rate_exponent_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), InvalidArgument);
    CHECK_THROWS_AS(rate_exponent_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {3, 1}}),
                    InvalidArgument);
}
