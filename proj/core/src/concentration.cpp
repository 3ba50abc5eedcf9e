#include "locrad/concentration.hpp"

#include "locrad/error.hpp"

#include <cmath>
#include <string>

namespace locrad {

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

double require(const std::optional<double>& v, const char* what, int k) {
    if (!v) throw InvalidArgument("phi" + std::to_string(k) + " needs " + what);
    return *v;
}

}  // namespace

void MassartParams::validate() const {
    if (!(expectation >= 0.0)) throw InvalidArgument("EZ must be >= 0");
    if (!(sigma2 >= 0.0)) throw InvalidArgument("sigma2 must be >= 0");
    if (!(b > 0.0)) throw InvalidArgument("b must be > 0");
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (!(x >= 0.0)) throw InvalidArgument("x must be >= 0");
    if (!in_open_unit(gamma)) throw InvalidArgument("gamma must lie in (0,1)");
}

double massart_upper_threshold(const MassartParams& p) {
    p.validate();
    const double sigma = std::sqrt(p.sigma2);
    return (1.0 + p.gamma) * p.expectation +
           (sigma * std::sqrt(2.0 * kMassartUpperK * p.x) + (3.5 + 32.0 / p.gamma) * p.b * p.x) /
               static_cast<double>(p.n);
}

double massart_lower_threshold(const MassartParams& p) {
    p.validate();
    const double sigma = std::sqrt(p.sigma2);
    return (1.0 - p.gamma) * p.expectation -
           (sigma * std::sqrt(2.0 * kMassartLowerK * p.x) + (3.5 + 43.2 / p.gamma) * p.b * p.x) /
               static_cast<double>(p.n);
}

void LadderParams::validate() const {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be a finite value >= 0");
    if (!in_open_unit(gamma) || !in_open_unit(gamma_prime)) {
        throw InvalidArgument("gamma and gamma_prime must lie in (0,1)");
    }
    if (!(gamma_double_prime > 0.0)) throw InvalidArgument("gamma_double_prime must be > 0");
}

LinearForm phi3_expansion(double gamma, double gamma_prime) {
    const double k1 = 2.0 * (1.0 + gamma) / (1.0 - gamma_prime);
    return {k1, k1 * std::sqrt(5.4) + 2.0, k1 * (1.75 + 21.6 / gamma_prime) + 1.75 + 16.0 / gamma};
}

LadderConstants ladder_constants(const LadderParams& params) {
    params.validate();
    const double g = params.gamma, g2 = params.gamma_double_prime;
    const LinearForm k = phi3_expansion(g, params.gamma_prime);
    const double s54 = std::sqrt(5.4);
    const double m = 2.0 * (1.0 + g2) / (1.0 - g);

    LadderConstants c;
    c.phi5.on_norm = k.on_norm * m;
    c.phi5.on_sqrt = k.on_sqrt + k.on_norm * (m * s54 + (1.0 + g2) + 2.0);
    c.phi5.on_eps = k.on_eps + k.on_norm * (m * (1.75 + 21.6 / g) + (1.75 + 16.0 / g2));

    c.phi6.on_norm = c.phi5.on_norm * (1.0 + g);
    c.phi6.on_sqrt = c.phi5.on_sqrt + 2.0 * c.phi5.on_norm;
    c.phi6.on_eps = c.phi5.on_eps + c.phi5.on_norm * (1.75 + 16.0 / g);
    return c;
}

PhiSelection available_phis(const LadderInputs& in) {
    PhiSelection s = 0;
    if (in.empirical_deviation) s |= 1u << 0 | 1u << 4;
    if (in.expected_empirical_deviation) s |= 1u << 1 | 1u << 5;
    if (in.rademacher_norm) s |= 1u << 2;
    if (in.expected_rademacher_norm) s |= 1u << 3;
    return s;
}

PhiLadder phi_ladder(double r, const LadderInputs& in, const LadderParams& params, PhiSelection selection) {
    params.validate();
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("ladder radius must lie in [0,1]");
    const double eps = params.eps, g = params.gamma, gp = params.gamma_prime, g2 = params.gamma_double_prime;
    const double sq = std::sqrt(r * eps);
    const double k1 = 2.0 * (1.0 + g) / (1.0 - gp);
    const double tail = 2.0 * sq + (1.75 + 16.0 / g) * eps;  // Massart upper term at gamma
    const double lower = std::sqrt(5.4 * r * eps) + (1.75 + 21.6 / gp) * eps;
    auto wants = [&](int k) { return (selection >> (k - 1)) & 1u; };

    PhiLadder out;
    if (wants(1)) out.phi[0] = require(in.empirical_deviation, "the empirical deviation", 1);
    if (wants(2)) {
        out.phi[1] = (1.0 + g) * require(in.expected_empirical_deviation, "the expected deviation", 2) + tail;
    }
    if (wants(3)) out.phi[2] = k1 * (require(in.rademacher_norm, "the Rademacher norm", 3) + lower) + tail;
    if (wants(4)) {
        const double er = require(in.expected_rademacher_norm, "the expected Rademacher norm", 4);
        out.phi[3] = k1 * ((1.0 + 1.0 / g2) * er + 2.0 * sq + (1.75 + 16.0 / g2) * eps + lower) + tail;
    }
    if (wants(5) || wants(6)) {
        const LadderConstants c = ladder_constants(params);
        if (wants(5)) {
            const double z = require(in.empirical_deviation, "the empirical deviation", 5);
            out.phi[4] = c.phi5.on_norm * z + c.phi5.on_sqrt * sq + c.phi5.on_eps * eps;
        }
        if (wants(6)) {
            const double z = require(in.expected_empirical_deviation, "the expected deviation", 6);
            out.phi[5] = c.phi6.on_norm * z + c.phi6.on_sqrt * sq + c.phi6.on_eps * eps;
        }
    }
    return out;
}

}  // namespace locrad
