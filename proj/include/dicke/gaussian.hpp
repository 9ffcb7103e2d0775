#pragma once

// Algebra of M-mode Gaussian states in the quadrature ordering
// (x1, p1, x2, p2, ...), with hbar = 1 so the vacuum covariance is I/2.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"

namespace dicke {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Tolerance used for structural identities (symplectic law, purity, ...).
inline constexpr double kStructuralTol = 1e-10;

/// Block-diagonal symplectic form built from ((0, 1), (-1, 0)) blocks.
Matrix symplectic_form(int modes);

class GaussianState {
public:
    /// Validates shapes and symmetry; throws DimensionMismatch / InvalidArgument.
    GaussianState(Vector mean, Matrix cov);

    static GaussianState vacuum(int modes);
    /// Single-mode thermal state with covariance (1 + 2 nbar)/2 * I.
    static GaussianState thermal(double nbar);
    static GaussianState coherent(double x, double p);

    int modes() const noexcept { return static_cast<int>(mean_.size() / 2); }
    const Vector& mean() const noexcept { return mean_; }
    const Matrix& cov() const noexcept { return cov_; }

private:
    Vector mean_;
    Matrix cov_;
};

/// Affine phase-space map R -> F R + d.
struct SymplecticTransform {
    Matrix matrix;
    Vector displacement;

    static SymplecticTransform identity(int modes);
    static SymplecticTransform from_matrix(Matrix f);

    int modes() const noexcept { return static_cast<int>(matrix.rows() / 2); }

    /// max |F Omega F^T - Omega|.
    double symplectic_residual() const;
    bool is_symplectic(double tol = kStructuralTol) const;
};

/// mean' = F mean + d, cov' = F cov F^T.
GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& t);

/// Reduced state on the listed modes (0-based indices, in the given order).
GaussianState partial_trace(const GaussianState& state, std::span<const int> keep);

struct SymplecticSpectrum {
    double d_plus = 0.0;
    double d_minus = 0.0;
    double ppt_d_plus = 0.0;
    double ppt_d_minus = 0.0;
    double i1 = 0.0;  // Det A
    double i2 = 0.0;  // Det B
    double i3 = 0.0;  // Det C
    double i4 = 0.0;  // Det sigma
};

/// Two-mode spectrum from the local symplectic invariants of
/// sigma = ((A, C), (C^T, B)).
SymplecticSpectrum symplectic_spectrum(const Matrix& cov);

/// max{0, -ln(2 d~_-)} for a two-mode covariance matrix.
double log_negativity(const Matrix& cov);

/// (2^M sqrt(Det sigma))^-1.
double purity(const Matrix& cov);

/// Wigner function, normalized to unit phase-space integral.
double wigner_at(const GaussianState& state, const Vector& point);

/// Symmetrically ordered characteristic function Tr[rho D(Lambda)].
std::complex<double> characteristic_function_at(const GaussianState& state, const Vector& lam);

/// Smallest symplectic eigenvalue of an arbitrary M-mode covariance matrix
/// (eigenvalues of |i Omega sigma|).
double min_symplectic_eigenvalue(const Matrix& cov);

}  // namespace dicke
