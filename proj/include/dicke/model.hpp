#pragma once

// Thermodynamic-limit Dicke model: Holstein-Primakoff bosonization of the
// atomic ensemble (mode 2) coupled to a single radiation mode (mode 1). The
// ground state in either phase is a pure two-mode Gaussian state.

#include <string_view>

#include "dicke/gaussian.hpp"

namespace dicke {

inline constexpr double kDefaultSingularityWindow = 1e-8;

struct DickeParams {
    double omega = 1.0;   // radiation frequency, units of omega0
    double omega0 = 1.0;  // atomic transition frequency
    double lam = 0.0;     // coupling
    int n_atoms = 100;
    /// Half-width of the excluded interval around lambda_c.
    double singularity_window = kDefaultSingularityWindow;

    /// Throws InvalidArgument on omega <= 0, omega0 <= 0, lam < 0, n_atoms < 1.
    void validate() const;
    DickeParams with_lambda(double value) const;
    double lambda_c() const;
};

enum class Phase { Normal, Superradiant };

std::string_view to_string(Phase phase) noexcept;

struct DickeDerived {
    DickeParams params;
    double lambda_c = 0.0;
    double k = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double omega_tilde = 0.0;
    Phase phase = Phase::Normal;
};

/// Throws CriticalPointSingularity when |lam - lambda_c| <= singularity_window.
DickeDerived derive(const DickeParams& params);

/// Local squeezer F1 = Diag(1/sqrt(w), sqrt(w), 1/sqrt(w~), sqrt(w~)).
Matrix local_squeezer(const DickeDerived& d);

/// Normal-mode map F = F3 F2 F1 taking the original quadratures to the
/// quadratures of the two decoupled oscillators with frequencies eps_-, eps_+.
Matrix normal_mode_transform(const DickeDerived& d);

/// Ground-state preparation map: the symplectic inverse of the normal-mode map
/// together with the macroscopic displacement (alpha sqrt(2N), 0, -beta sqrt(2N), 0).
/// Applied to the vacuum it yields the ground state.
SymplecticTransform symplectic_chain(const DickeDerived& d);

/// The six closed-form covariance entries, assembled as a 4x4 matrix.
Matrix closed_form_covariance(const DickeDerived& d);

/// Two-mode ground state: radiation is mode 0, atoms mode 1.
GaussianState ground_state(const DickeParams& params);
GaussianState reduced_radiation_state(const DickeParams& params);
GaussianState reduced_atomic_state(const DickeParams& params);

namespace detail {

// Same as derive()/ground_state() but accepts negative couplings, which the
// finite-difference engine needs to differentiate through lam = 0. The model
// at -lam is the parity image (x2, p2) -> -(x2, p2) of the model at lam.
DickeDerived derive_signed(const DickeParams& params);
GaussianState ground_state_signed(const DickeParams& params);

}  // namespace detail

}  // namespace dicke
