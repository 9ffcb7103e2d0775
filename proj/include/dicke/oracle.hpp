#pragma once

// Brute-force validators used only by the test and acceptance binaries:
// truncated Fock-space states, Gaussian pure-state overlaps and numerical
// Fisher-information integrals.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dicke/measurements.hpp"

namespace dicke::oracle {

struct FockStateMatrix {
    int dim = 0;
    Eigen::MatrixXcd matrix;

    std::vector<double> diagonal() const;
    double trace() const;
    double mean_photon_number() const;
};

/// D(gamma) S(r) nu_th S^+ D^+ on the first dim Fock states, built from matrix
/// exponentials of truncated generators on a padded basis. Without dim the
/// truncation starts at 10 <N> + 40 and grows by half until the trace lost to
/// truncation is below 1e-9. With an explicit dim that misses the bound, or
/// when the adaptive search gives up, throws TruncationInsufficient.
FockStateMatrix build_dsts_fock(const DstsParams& params, std::optional<int> dim = std::nullopt);

/// |<psi1|psi2>|^2 of two pure Gaussian states. Throws NonPureState otherwise.
double pure_overlap(const GaussianState& s1, const GaussianState& s2);

/// 8 (1 - |<psi(lam - delta/2)|psi(lam + delta/2)>|) / delta^2.
double fidelity_qfi(const DickeParams& params, double delta);

struct Grid1D {
    double lo = 0.0;
    double hi = 0.0;
    int intervals = 2000;  // rounded up to even for Simpson's rule
};

/// Integral of (d_lam p)^2 / p over x, with d_lam p from central differences of
/// step h. Throws NonNormalizedDensity when the density at lam integrates to a
/// value further than 1e-6 from 1.
double fi_integral_continuous(const std::function<double(double lam, double x)>& pdf, double lam, double h,
                              const Grid1D& grid);

/// Sum of (d_lam p(n))^2 / p(n) with central differences of step h. Throws
/// NonNormalizedDensity when the masses at lam sum to a value further than
/// 1e-6 from 1.
double fi_sum_discrete(const std::function<std::vector<double>(double lam)>& pmf, double lam, double h);

}  // namespace dicke::oracle
