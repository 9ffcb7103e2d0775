#pragma once

// Classical Fisher information of local probes on the Dicke ground state:
// homodyne detection on either subsystem and photon counting on radiation.

#include <optional>
#include <string_view>
#include <vector>

#include "dicke/estimation.hpp"

namespace dicke {

enum class Target { Radiation, Atoms };

std::string_view to_string(Target target) noexcept;

struct HomodyneSetting {
    double phi = 0.0;
    Target target = Target::Radiation;
};

/// Gaussian marginal of the quadrature x(phi) = cos(phi) x + sin(phi) p.
struct QuadratureMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Requires a single-mode state with diagonal covariance.
QuadratureMoments quadrature_distribution(const GaussianState& state, double phi);

/// Fisher information of homodyne detection of x(phi) on the chosen subsystem:
/// <dx(phi)>^2 / sigma(phi) + dsigma(phi)^2 / (2 sigma(phi)^2).
double fi_homodyne(const DickeParams& params, const HomodyneSetting& setting);

/// Same, reusing moments and derivatives of the full two-mode ground state.
double fi_homodyne(const GaussianState& ground, const StateDerivative& derivative,
                   const HomodyneSetting& setting);

/// Displaced squeezed thermal parametrization D(gamma) S(r) nu_th(n_th) S^+ D^+.
struct DstsParams {
    double n_th = 0.0;
    double r = 0.0;
    double n_s = 0.0;  // sinh^2 r
    double gamma = 0.0;

    static DstsParams make(double n_th, double r, double gamma);
    /// Moments: cov = (1 + 2 n_th)/2 Diag(e^{2r}, e^{-2r}), mean = (sqrt(2) gamma, 0).
    GaussianState state() const;
};

DstsParams dsts_params(const GaussianState& state);

struct MeanPhotonDecomposition {
    double squeezed = 0.0;  // n_s
    double thermal = 0.0;   // n_th (1 + 2 n_s)
    double coherent = 0.0;  // gamma^2
    double total = 0.0;
};

MeanPhotonDecomposition mean_photon_decomposition(const GaussianState& state);

/// Moment-dependent constants of the closed-form photon-number distribution.
struct PhotonNumberKernel {
    double r00 = 0.0;
    double a_tilde = 0.0;
    double b_tilde = 0.0;
    double c_tilde = 0.0;
};

PhotonNumberKernel photon_kernel(const GaussianState& state);

struct PhotonOptions {
    /// Fixed cutoff; when empty the cutoff grows until the tail is below tolerance.
    std::optional<int> n_max;
    double tail_tolerance = 1e-10;
    int hard_limit = 100000;
};

struct PhotonDistribution {
    std::vector<double> probs;  // p(0) .. p(n_max)
    int n_max = 0;
    double tail_mass = 0.0;     // 1 - sum p(n), clamped at 0
};

PhotonDistribution photon_distribution(const GaussianState& state, const PhotonOptions& options = {});

struct PhotonCountingResult {
    double fi = 0.0;
    int n_max = 0;
};

/// Fisher information of photon counting on the radiation mode.
PhotonCountingResult fi_photon_counting(const DickeParams& params);

/// Sum of [dp(n)]^2 / p(n) over terms with p(n) >= 1e-14.
double discrete_fisher_information(const std::vector<double>& p, const std::vector<double>& dp);

}  // namespace dicke
