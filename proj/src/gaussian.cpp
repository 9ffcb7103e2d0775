#include "dicke/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace dicke {

namespace {

void check_square(const Matrix& m, Eigen::Index n, const char* what) {
    require(m.rows() == n && m.cols() == n, ErrorCode::DimensionMismatch,
            std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Clamp tiny negative radicands produced by rounding; reject real violations.
double checked_sqrt(double x, double scale, const char* what) {
    if (x < 0.0) {
        require(x >= -kStructuralTol * std::max(1.0, scale), ErrorCode::Unphysical,
                std::string(what) + ": negative radicand " + std::to_string(x));
        return 0.0;
    }
    return std::sqrt(x);
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid argument";
        case ErrorCode::DimensionMismatch: return "dimension mismatch";
        case ErrorCode::CriticalPointSingularity: return "critical point singularity";
        case ErrorCode::StepCrossesCriticalPoint: return "step crosses critical point";
        case ErrorCode::SingularCovariance: return "singular covariance";
        case ErrorCode::Unphysical: return "unphysical state";
        case ErrorCode::NonPureState: return "non-pure state";
        case ErrorCode::NonConvergedSeries: return "series did not converge";
        case ErrorCode::CutoffOverflow: return "cutoff overflow";
        case ErrorCode::NumericalBreakdown: return "numerical breakdown";
        case ErrorCode::NonNormalizedDensity: return "density not normalized";
        case ErrorCode::TruncationInsufficient: return "truncation insufficient";
        case ErrorCode::InsufficientSamples: return "insufficient samples";
        case ErrorCode::Config: return "configuration error";
    }
    return "unknown error";
}

Matrix symplectic_form(int modes) {
    require(modes >= 1, ErrorCode::InvalidArgument, "symplectic_form: modes must be >= 1");
    Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
    for (int m = 0; m < modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    require(mean_.size() >= 2 && mean_.size() % 2 == 0, ErrorCode::DimensionMismatch,
            "GaussianState: mean length must be even and positive");
    check_square(cov_, mean_.size(), "GaussianState");
    require(cov_.allFinite() && mean_.allFinite(), ErrorCode::InvalidArgument,
            "GaussianState: non-finite moments");
    const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    require(asym <= kStructuralTol * std::max(1.0, cov_.cwiseAbs().maxCoeff()),
            ErrorCode::InvalidArgument, "GaussianState: covariance matrix is not symmetric");
}

GaussianState GaussianState::vacuum(int modes) {
    require(modes >= 1, ErrorCode::InvalidArgument, "vacuum: modes must be >= 1");
    return {Vector::Zero(2 * modes), 0.5 * Matrix::Identity(2 * modes, 2 * modes)};
}

GaussianState GaussianState::thermal(double nbar) {
    require(nbar >= 0.0, ErrorCode::InvalidArgument, "thermal: nbar must be >= 0");
    return {Vector::Zero(2), 0.5 * (1.0 + 2.0 * nbar) * Matrix::Identity(2, 2)};
}

GaussianState GaussianState::coherent(double x, double p) {
    Vector mean(2);
    mean << x, p;
    return {mean, 0.5 * Matrix::Identity(2, 2)};
}

SymplecticTransform SymplecticTransform::identity(int modes) {
    return {Matrix::Identity(2 * modes, 2 * modes), Vector::Zero(2 * modes)};
}

SymplecticTransform SymplecticTransform::from_matrix(Matrix f) {
    require(f.rows() == f.cols() && f.rows() % 2 == 0, ErrorCode::DimensionMismatch,
            "SymplecticTransform: matrix must be square with even size");
    const auto n = f.rows();
    return {std::move(f), Vector::Zero(n)};
}

double SymplecticTransform::symplectic_residual() const {
    const Matrix omega = symplectic_form(modes());
    return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff();
}

bool SymplecticTransform::is_symplectic(double tol) const {
    return symplectic_residual() < tol && std::abs(matrix.determinant() - 1.0) < tol;
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& t) {
    const auto n = state.mean().size();
    check_square(t.matrix, n, "apply_symplectic");
    require(t.displacement.size() == n, ErrorCode::DimensionMismatch,
            "apply_symplectic: displacement length mismatch");
    Matrix cov = t.matrix * state.cov() * t.matrix.transpose();
    // Restore exact symmetry lost to rounding.
    cov = 0.5 * (cov + cov.transpose()).eval();
    return {t.matrix * state.mean() + t.displacement, std::move(cov)};
}

GaussianState partial_trace(const GaussianState& state, std::span<const int> keep) {
    require(!keep.empty(), ErrorCode::InvalidArgument, "partial_trace: empty mode set");
    const int modes = state.modes();
    std::vector<int> idx;
    idx.reserve(2 * keep.size());
    for (int m : keep) {
        require(m >= 0 && m < modes, ErrorCode::InvalidArgument,
                "partial_trace: mode index " + std::to_string(m) + " out of range");
        require(std::find(idx.begin(), idx.end(), 2 * m) == idx.end(), ErrorCode::InvalidArgument,
                "partial_trace: duplicate mode index");
        idx.push_back(2 * m);
        idx.push_back(2 * m + 1);
    }
    const auto n = static_cast<Eigen::Index>(idx.size());
    Vector mean(n);
    Matrix cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        mean(i) = state.mean()(idx[i]);
        for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = state.cov()(idx[i], idx[j]);
    }
    return {std::move(mean), std::move(cov)};
}

SymplecticSpectrum symplectic_spectrum(const Matrix& cov) {
    check_square(cov, 4, "symplectic_spectrum");
    SymplecticSpectrum s;
    s.i1 = cov.block<2, 2>(0, 0).determinant();
    s.i2 = cov.block<2, 2>(2, 2).determinant();
    s.i3 = cov.block<2, 2>(0, 2).determinant();
    s.i4 = cov.determinant();

    auto eigen_pair = [&](double delta, double& plus, double& minus) {
        const double root = checked_sqrt(delta * delta - 4.0 * s.i4, delta * delta, "symplectic_spectrum");
        plus = checked_sqrt(0.5 * (delta + root), delta, "symplectic_spectrum");
        minus = checked_sqrt(0.5 * (delta - root), delta, "symplectic_spectrum");
    };
    eigen_pair(s.i1 + s.i2 + 2.0 * s.i3, s.d_plus, s.d_minus);
    eigen_pair(s.i1 + s.i2 - 2.0 * s.i3, s.ppt_d_plus, s.ppt_d_minus);
    return s;
}

double log_negativity(const Matrix& cov) {
    const double d = symplectic_spectrum(cov).ppt_d_minus;
    require(d > 0.0, ErrorCode::SingularCovariance, "log_negativity: vanishing symplectic eigenvalue");
    return std::max(0.0, -std::log(2.0 * d));
}

double purity(const Matrix& cov) {
    require(cov.rows() == cov.cols() && cov.rows() % 2 == 0 && cov.rows() > 0,
            ErrorCode::DimensionMismatch, "purity: covariance must be 2M x 2M");
    const double det = cov.determinant();
    require(det > 0.0, ErrorCode::SingularCovariance, "purity: non-positive determinant");
    const auto modes = static_cast<double>(cov.rows() / 2);
    return 1.0 / (std::pow(2.0, modes) * std::sqrt(det));
}

double wigner_at(const GaussianState& state, const Vector& point) {
    require(point.size() == state.mean().size(), ErrorCode::DimensionMismatch,
            "wigner_at: point dimension mismatch");
    Eigen::LDLT<Matrix> ldlt(state.cov());
    const double det = state.cov().determinant();
    require(ldlt.info() == Eigen::Success && det > 0.0, ErrorCode::SingularCovariance,
            "wigner_at: singular covariance");
    const Vector dx = point - state.mean();
    const double quad = dx.dot(ldlt.solve(dx));
    return std::exp(-0.5 * quad) / (std::pow(2.0 * std::numbers::pi, state.modes()) * std::sqrt(det));
}

std::complex<double> characteristic_function_at(const GaussianState& state, const Vector& lam) {
    require(lam.size() == state.mean().size(), ErrorCode::DimensionMismatch,
            "characteristic_function_at: dimension mismatch");
    const Matrix omega = symplectic_form(state.modes());
    const double quad = lam.dot(omega * state.cov() * omega.transpose() * lam);
    const double phase = lam.dot(omega * state.mean());
    return std::exp(std::complex<double>(-0.5 * quad, -phase));
}

double min_symplectic_eigenvalue(const Matrix& cov) {
    require(cov.rows() == cov.cols() && cov.rows() % 2 == 0 && cov.rows() > 0,
            ErrorCode::DimensionMismatch, "min_symplectic_eigenvalue: covariance must be 2M x 2M");
    const Matrix omega = symplectic_form(static_cast<int>(cov.rows() / 2));
    Eigen::EigenSolver<Matrix> es(omega * cov, false);
    return es.eigenvalues().imag().cwiseAbs().minCoeff();
}

}  // namespace dicke
