#pragma once

#include <optional>
#include <span>
#include <type_traits>
#include <utility>

#include "dicke/model.hpp"

namespace dicke {

/// Richardson-extrapolated central difference, (4 D(h/2) - D(h)) / 3 with
/// D(h) = (f(x + h) - f(x - h)) / 2h. Works for any f whose result supports
/// +, - and scalar multiplication (double, Eigen vectors and matrices).
template <class F>
auto richardson_derivative(F&& f, double x, double h) {
    if constexpr (std::is_arithmetic_v<decltype(f(x))>) {
        const double coarse = (f(x + h) - f(x - h)) / (2.0 * h);
        const double fine = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
        return (4.0 * fine - coarse) / 3.0;
    } else {
        auto central = [&](double step) { return ((f(x + step) - f(x - step)) / (2.0 * step)).eval(); };
        const auto coarse = central(h);
        const auto fine = central(0.5 * h);
        return ((4.0 * fine - coarse) / 3.0).eval();
    }
}

struct StateDerivative {
    Matrix dcov;
    Vector dmean;
    double step = 0.0;
};

/// max(1e-6, 1e-5 |lam - lambda_c|), capped at 1% of the distance from lam to
/// the singularity window so that lam +- step stays well on the same side of
/// lambda_c.
double default_step(const DickeParams& params);

/// d sigma / d lam and d<R> / d lam of the ground state. An explicit step that
/// straddles lambda_c (or enters the singularity window) throws
/// StepCrossesCriticalPoint.
StateDerivative state_derivative(const DickeParams& params, std::optional<double> step = std::nullopt);

struct EstimationResult {
    double qfi = 0.0;
    double quadratic_term = 0.0;    // Tr[Omega^T dsigma Omega Phi]
    double displacement_term = 0.0; // dR^T sigma^-1 dR
};

/// Pure-state QFI from the moments and their derivatives.
EstimationResult pure_state_qfi(const GaussianState& state, const StateDerivative& derivative);

EstimationResult qfi(const DickeParams& params);

struct SldCoefficients {
    Matrix phi;
    Vector zeta;
    double nu = 0.0;
};

SldCoefficients sld_coefficients(const DickeParams& params);

/// SLD coefficients expressed on the locally squeezed quadratures R' = F1 R,
/// i.e. Phi' = F1^-T Phi F1^-1 and zeta' = F1^-T zeta.
SldCoefficients sld_in_local_frame(const DickeParams& params);

/// Quantum (or classical) Cramer-Rao variance bound 1 / (m * information).
double cramer_rao_bound(double information, long long measurements);

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
};

/// Least-squares fit of log(value) against log|lam - center|. Requires at least
/// four samples on one side of center spanning a decade of distances.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples, double center);

}  // namespace dicke
