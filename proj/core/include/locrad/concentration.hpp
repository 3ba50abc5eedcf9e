#pragma once

#include "locrad/rademacher.hpp"

#include <array>
#include <cstddef>
#include <optional>

namespace locrad {

/// Inputs of Massart's inequalities for Z = ||P_n - P||_F or ||R_n||_F.
struct MassartParams {
    double expectation = 0.0;  ///< E Z
    double sigma2 = 0.0;       ///< n sup_f Var f(X_1)
    double b = 1.0;            ///< sup-norm bound of the class
    std::size_t n = 1;
    double x = 1.0;            ///< tail parameter, probability e^{-x}
    double gamma = 0.5;

    void validate() const;
};

inline constexpr double kMassartUpperK = 4.0;
inline constexpr double kMassartLowerK = 5.4;

/// (1+g) EZ + [sigma sqrt(2 * 4 x) + (3.5 + 32/g) b x] / n.
double massart_upper_threshold(const MassartParams& p);

/// (1-g) EZ - [sigma sqrt(2 * 5.4 x) + (3.5 + 43.2/g) b x] / n.
double massart_lower_threshold(const MassartParams& p);

struct LadderParams {
    double eps = 0.01;
    double gamma = 0.5;
    double gamma_prime = 0.5;
    double gamma_double_prime = 0.5;

    void validate() const;
};

/// Coefficients (a, b, c) of phi(r) = a Z + b sqrt(eps r) + c eps.
struct LinearForm {
    double on_norm = 0.0;
    double on_sqrt = 0.0;
    double on_eps = 0.0;
};

/// phi3 expanded with its norm term kept symbolic: the coefficients must
/// equal (K1, K2, K3) from constants_from_gammas.
LinearForm phi3_expansion(double gamma, double gamma_prime);

/// Constants c'_1..3 (phi5) and c~_1..3 (phi6).
///
/// phi5 follows from phi3 by bounding ||R_n|| with Massart's upper inequality
/// at gamma'', desymmetrizing E||R_n||_{B(r)} <= 2 E||P_n - P||_{B(r)} + sqrt(r eps)
/// (valid for n eps >= 1), and Massart's lower inequality for P_n - P at gamma.
/// phi6 follows from phi5 by Massart's upper inequality for P_n - P (the phi2 bound).
struct LadderConstants {
    LinearForm phi5;
    LinearForm phi6;
};
LadderConstants ladder_constants(const LadderParams& params);

/// Optional inputs of the ladder at one radius r.
struct LadderInputs {
    std::optional<double> empirical_deviation;           ///< ||P_n - P|| over B(r)
    std::optional<double> expected_empirical_deviation;  ///< E ||P_n - P|| over B(r)
    std::optional<double> rademacher_norm;               ///< ||R_n|| over the phi3 ball
    std::optional<double> expected_rademacher_norm;      ///< E_eps ||R_n|| over B_e(2r)
};

struct PhiLadder {
    std::array<std::optional<double>, 6> phi{};

    std::optional<double> operator[](std::size_t k) const { return phi.at(k - 1); }
};

/// Mask of ladder entries to evaluate; bit k-1 selects phi_k.
using PhiSelection = unsigned;
inline constexpr PhiSelection kAllPhis = 0x3f;

/// Evaluates the selected phi_k at r; throws InvalidArgument when a required
/// input for a selected entry is missing.
PhiLadder phi_ladder(double r, const LadderInputs& inputs, const LadderParams& params,
                     PhiSelection selection = kAllPhis);

/// Entries whose inputs are present.
PhiSelection available_phis(const LadderInputs& inputs);

}  // namespace locrad
