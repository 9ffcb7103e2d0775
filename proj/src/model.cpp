#include "dicke/model.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dicke {

namespace {

void validate_frequencies(const DickeParams& p) {
    require(std::isfinite(p.omega) && p.omega > 0.0, ErrorCode::InvalidArgument, "omega must be > 0");
    require(std::isfinite(p.omega0) && p.omega0 > 0.0, ErrorCode::InvalidArgument, "omega0 must be > 0");
    require(std::isfinite(p.lam), ErrorCode::InvalidArgument, "lambda must be finite");
    require(p.n_atoms >= 1, ErrorCode::InvalidArgument, "n_atoms must be >= 1");
    require(std::isfinite(p.singularity_window) && p.singularity_window >= 0.0,
            ErrorCode::InvalidArgument, "singularity window must be >= 0");
}

}  // namespace

void DickeParams::validate() const {
    validate_frequencies(*this);
    require(lam >= 0.0, ErrorCode::InvalidArgument, "lambda must be >= 0");
}

DickeParams DickeParams::with_lambda(double value) const {
    DickeParams p = *this;
    p.lam = value;
    return p;
}

double DickeParams::lambda_c() const { return 0.5 * std::sqrt(omega * omega0); }

std::string_view to_string(Phase phase) noexcept {
    return phase == Phase::Normal ? "normal" : "superradiant";
}

namespace detail {

DickeDerived derive_signed(const DickeParams& params) {
    validate_frequencies(params);
    const double w = params.omega;
    const double w0 = params.omega0;
    const double lam = params.lam;
    const double lam_abs = std::abs(lam);

    DickeDerived d;
    d.params = params;
    d.lambda_c = params.lambda_c();
    const double lc = d.lambda_c;
    require(std::abs(lam_abs - lc) > params.singularity_window, ErrorCode::CriticalPointSingularity,
            "lambda = " + std::to_string(lam) + " lies within the singularity window of lambda_c = " +
                std::to_string(lc));

    d.phase = lam_abs < lc ? Phase::Normal : Phase::Superradiant;
    // Determinant of the frequency matrix diag(w^2, w0^2/k^2) + coupling, written
    // in factored form so that it vanishes exactly at lambda_c.
    double det = 0.0;
    if (d.phase == Phase::Normal) {
        d.k = 1.0;
        det = 16.0 * lc * lc * (lc - lam_abs) * (lc + lam_abs);
    } else {
        d.k = (lc * lc) / (lam * lam);
        const double one_minus_k = (lam_abs - lc) * (lam_abs + lc) / (lam * lam);
        d.alpha = lam / w * std::sqrt(one_minus_k * (1.0 + d.k));
        d.beta = std::sqrt(0.5 * one_minus_k);
        const double l2 = lam * lam;
        const double lc2 = lc * lc;
        det = 16.0 * (l2 - lc2) * (l2 + lc2);
    }
    const double k = d.k;

    const double a = w * w;
    const double c = w0 * w0 / (k * k);
    const double b2 = 4.0 * lam * lam * w * w0 * k;
    const double disc = std::sqrt((c - a) * (c - a) + 4.0 * b2);
    const double eps_plus2 = 0.5 * (a + c + disc);
    const double eps_minus2 = det / eps_plus2;
    require(eps_minus2 >= -1e-12, ErrorCode::Unphysical, "negative squared eigenfrequency");
    d.eps_plus = std::sqrt(eps_plus2);
    d.eps_minus = std::sqrt(std::max(0.0, eps_minus2));
    require(d.eps_minus > 0.0, ErrorCode::CriticalPointSingularity, "vanishing soft-mode frequency");

    // atan2 keeps 2 theta continuous when w0^2 - k^2 w^2 changes sign.
    d.theta = 0.5 * std::atan2(4.0 * lam * std::sqrt(w * w0 * k) * k * k, w0 * w0 - k * k * w * w);
    d.omega_tilde = w0 * (1.0 + k) / (2.0 * k);
    return d;
}

GaussianState ground_state_signed(const DickeParams& params) {
    return apply_symplectic(GaussianState::vacuum(2), symplectic_chain(derive_signed(params)));
}

}  // namespace detail

DickeDerived derive(const DickeParams& params) {
    params.validate();
    return detail::derive_signed(params);
}

Matrix local_squeezer(const DickeDerived& d) {
    const double w = d.params.omega;
    const double wt = d.omega_tilde;
    Vector diag(4);
    diag << 1.0 / std::sqrt(w), std::sqrt(w), 1.0 / std::sqrt(wt), std::sqrt(wt);
    return diag.asDiagonal();
}

Matrix normal_mode_transform(const DickeDerived& d) {
    require(d.eps_minus > 0.0, ErrorCode::CriticalPointSingularity, "vanishing soft-mode frequency");
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);
    Matrix rotation = Matrix::Zero(4, 4);
    rotation(0, 0) = rotation(1, 1) = rotation(2, 2) = rotation(3, 3) = c;
    rotation(0, 2) = rotation(1, 3) = -s;
    rotation(2, 0) = rotation(3, 1) = s;
    Vector f3(4);
    f3 << std::sqrt(d.eps_minus), 1.0 / std::sqrt(d.eps_minus), std::sqrt(d.eps_plus),
        1.0 / std::sqrt(d.eps_plus);
    return f3.asDiagonal() * rotation * local_squeezer(d);
}

SymplecticTransform symplectic_chain(const DickeDerived& d) {
    require(d.eps_minus > 0.0, ErrorCode::CriticalPointSingularity, "vanishing soft-mode frequency");
    const double w = d.params.omega;
    const double wt = d.omega_tilde;
    const double c = std::cos(d.theta);
    const double s = std::sin(d.theta);

    // F^-1 = F1^-1 F2^T F3^-1, each factor inverted in closed form.
    Vector f1_inv(4);
    f1_inv << std::sqrt(w), 1.0 / std::sqrt(w), std::sqrt(wt), 1.0 / std::sqrt(wt);
    Matrix rotation_t = Matrix::Zero(4, 4);
    rotation_t(0, 0) = rotation_t(1, 1) = rotation_t(2, 2) = rotation_t(3, 3) = c;
    rotation_t(0, 2) = rotation_t(1, 3) = s;
    rotation_t(2, 0) = rotation_t(3, 1) = -s;
    Vector f3_inv(4);
    f3_inv << 1.0 / std::sqrt(d.eps_minus), std::sqrt(d.eps_minus), 1.0 / std::sqrt(d.eps_plus),
        std::sqrt(d.eps_plus);

    SymplecticTransform t;
    t.matrix = f1_inv.asDiagonal() * rotation_t * f3_inv.asDiagonal();
    const double root_2n = std::sqrt(2.0 * d.params.n_atoms);
    t.displacement = Vector::Zero(4);
    t.displacement(0) = d.alpha * root_2n;
    t.displacement(2) = -d.beta * root_2n;
    return t;
}

Matrix closed_form_covariance(const DickeDerived& d) {
    const double w = d.params.omega;
    const double wt = d.omega_tilde;
    const double em = d.eps_minus;
    const double ep = d.eps_plus;
    const double c2 = std::cos(d.theta) * std::cos(d.theta);
    const double s2 = std::sin(d.theta) * std::sin(d.theta);
    const double sin_2t = std::sin(2.0 * d.theta);

    Matrix sigma = Matrix::Zero(4, 4);
    sigma(0, 0) = 0.5 * w * (c2 / em + s2 / ep);
    sigma(1, 1) = 0.5 / w * (em * c2 + ep * s2);
    sigma(2, 2) = 0.5 * wt * (c2 / ep + s2 / em);
    sigma(3, 3) = 0.5 / wt * (ep * c2 + em * s2);
    sigma(0, 2) = sigma(2, 0) = std::sqrt(w * wt) * sin_2t / 4.0 * (1.0 / ep - 1.0 / em);
    sigma(1, 3) = sigma(3, 1) = -sin_2t / (4.0 * std::sqrt(w * wt)) * (em - ep);
    return sigma;
}

GaussianState ground_state(const DickeParams& params) {
    return apply_symplectic(GaussianState::vacuum(2), symplectic_chain(derive(params)));
}

GaussianState reduced_radiation_state(const DickeParams& params) {
    constexpr std::array<int, 1> keep{0};
    return partial_trace(ground_state(params), keep);
}

GaussianState reduced_atomic_state(const DickeParams& params) {
    constexpr std::array<int, 1> keep{1};
    return partial_trace(ground_state(params), keep);
}

}  // namespace dicke
