#include "dicke/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

namespace {

double distance_to_critical(const DickeParams& params) {
    return std::abs(params.lam - params.lambda_c());
}

}  // namespace

double default_step(const DickeParams& params) {
    const double dist = distance_to_critical(params);
    const double room = dist - params.singularity_window;
    require(room > 0.0, ErrorCode::CriticalPointSingularity,
            "lambda lies within the singularity window of lambda_c");
    return std::min(std::max(1e-6, 1e-5 * dist), 0.01 * room);
}

StateDerivative state_derivative(const DickeParams& params, std::optional<double> step) {
    params.validate();
    derive(params);  // surfaces CriticalPointSingularity before any stepping

    double h = 0.0;
    if (step) {
        h = *step;
        require(std::isfinite(h) && h > 0.0, ErrorCode::InvalidArgument, "derivative step must be > 0");
        require(distance_to_critical(params) - h > params.singularity_window,
                ErrorCode::StepCrossesCriticalPoint,
                "step " + std::to_string(h) + " straddles lambda_c or enters the singularity window");
    } else {
        h = default_step(params);
    }

    auto at = [&](double offset) { return detail::ground_state_signed(params.with_lambda(params.lam + offset)); };
    const GaussianState plus = at(h);
    const GaussianState minus = at(-h);
    const GaussianState half_plus = at(0.5 * h);
    const GaussianState half_minus = at(-0.5 * h);

    StateDerivative out;
    out.step = h;
    const Matrix coarse_cov = (plus.cov() - minus.cov()) / (2.0 * h);
    const Matrix fine_cov = (half_plus.cov() - half_minus.cov()) / h;
    out.dcov = (4.0 * fine_cov - coarse_cov) / 3.0;
    out.dcov = 0.5 * (out.dcov + out.dcov.transpose()).eval();
    const Vector coarse_mean = (plus.mean() - minus.mean()) / (2.0 * h);
    const Vector fine_mean = (half_plus.mean() - half_minus.mean()) / h;
    out.dmean = (4.0 * fine_mean - coarse_mean) / 3.0;
    return out;
}

EstimationResult pure_state_qfi(const GaussianState& state, const StateDerivative& derivative) {
    const auto n = state.mean().size();
    require(derivative.dcov.rows() == n && derivative.dcov.cols() == n && derivative.dmean.size() == n,
            ErrorCode::DimensionMismatch, "pure_state_qfi: derivative dimension mismatch");
    const Matrix omega = symplectic_form(state.modes());
    const Matrix& dcov = derivative.dcov;

    EstimationResult r;
    // Phi = -dsigma for pure states.
    r.quadratic_term = -(omega.transpose() * dcov * omega * dcov).trace();
    Eigen::LDLT<Matrix> ldlt(state.cov());
    require(ldlt.info() == Eigen::Success, ErrorCode::SingularCovariance, "pure_state_qfi: singular covariance");
    r.displacement_term = derivative.dmean.dot(ldlt.solve(derivative.dmean));
    r.qfi = r.quadratic_term + r.displacement_term;
    return r;
}

EstimationResult qfi(const DickeParams& params) {
    return pure_state_qfi(ground_state(params), state_derivative(params));
}

SldCoefficients sld_coefficients(const DickeParams& params) {
    const GaussianState state = ground_state(params);
    const StateDerivative der = state_derivative(params);
    const Matrix omega = symplectic_form(2);

    SldCoefficients s;
    s.phi = -der.dcov;
    Eigen::LDLT<Matrix> ldlt(state.cov());
    s.zeta = omega.transpose() * ldlt.solve(der.dmean);
    s.nu = (omega.transpose() * state.cov() * omega * s.phi).trace();
    return s;
}

SldCoefficients sld_in_local_frame(const DickeParams& params) {
    SldCoefficients s = sld_coefficients(params);
    const Matrix f1_inv = local_squeezer(derive(params)).inverse();
    s.phi = f1_inv.transpose() * s.phi * f1_inv;
    s.zeta = f1_inv.transpose() * s.zeta;
    return s;
}

double cramer_rao_bound(double information, long long measurements) {
    require(measurements >= 1, ErrorCode::InvalidArgument, "measurement count must be >= 1");
    require(information > 0.0, ErrorCode::InvalidArgument, "information must be > 0");
    return 1.0 / (static_cast<double>(measurements) * information);
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples, double center) {
    require(samples.size() >= 4, ErrorCode::InsufficientSamples, "fit_power_law: need at least 4 samples");
    const double side = samples.front().first - center;
    require(side != 0.0, ErrorCode::InsufficientSamples, "fit_power_law: sample at the center");

    double min_dist = INFINITY;
    double max_dist = 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [lam, value] : samples) {
        const double offset = lam - center;
        require(offset * side > 0.0, ErrorCode::InsufficientSamples,
                "fit_power_law: samples must lie on one side of the center");
        require(value > 0.0 && std::isfinite(value), ErrorCode::InsufficientSamples,
                "fit_power_law: values must be positive and finite");
        const double dist = std::abs(offset);
        min_dist = std::min(min_dist, dist);
        max_dist = std::max(max_dist, dist);
        const double x = std::log(dist);
        const double y = std::log(value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    require(max_dist >= 10.0 * min_dist * (1.0 - 1e-12), ErrorCode::InsufficientSamples,
            "fit_power_law: samples must span at least one decade");

    const double n = static_cast<double>(samples.size());
    const double denom = n * sxx - sx * sx;
    PowerLawFit fit;
    fit.exponent = (n * sxy - sx * sy) / denom;
    fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
    return fit;
}

}  // namespace dicke
