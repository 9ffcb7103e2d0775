#include "dicke/measurements.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dicke/numeric.hpp"

namespace dicke {

namespace {

constexpr double kDiagonalTol = 1e-10;
constexpr double kNegativeProbTol = 1e-9;
constexpr double kSkipProbability = 1e-14;

void require_diagonal_single_mode(const GaussianState& state, const char* what) {
    require(state.modes() == 1, ErrorCode::DimensionMismatch, std::string(what) + ": single-mode state required");
    const Matrix& cov = state.cov();
    require(std::abs(cov(0, 1)) <= kDiagonalTol * std::max(1.0, cov.diagonal().maxCoeff()),
            ErrorCode::InvalidArgument, std::string(what) + ": covariance must be diagonal");
}

// Closed-form photon-number probabilities for a diagonal covariance and a
// displacement along x.
//
// The Hermite sum is rewritten as a convolution
//   p(n) = R00 sum_k [C(2k,k)/4^k] d^k q_{2(n-k)},
// with s = (2 s11 - 1)/(1 + 2 s11), d = (2 s22 - 1)/(1 + 2 s22), y = C~, and
// q_m = s^{m/2} i^{-m} H_m(i y / sqrt(s)) / (2^m Gamma(m/2 + 1)), which obeys the
// real recurrence q_{m+1} = y rho_m q_m + s m/(m+1) q_{m-1},
// rho_m = Gamma(m/2 + 1)/Gamma(m/2 + 3/2). For s11 >= s22 this is the
// |B~| form with A~ + |B~| = s and A~ - |B~| = d; the signed form also covers
// s11 < s22. Everything is carried as sign and log-magnitude so that large
// displacements and strong squeezing do not overflow.
std::vector<double> photon_probabilities(const GaussianState& state, int n_max) {
    const double s11 = state.cov()(0, 0);
    const double s22 = state.cov()(1, 1);
    const double x = state.mean()(0);
    const PhotonNumberKernel kernel = photon_kernel(state);

    const double s = (2.0 * s11 - 1.0) / (1.0 + 2.0 * s11);
    const double d = (2.0 * s22 - 1.0) / (1.0 + 2.0 * s22);
    const double y = kernel.c_tilde;
    const double log_r00 = std::log(2.0) - x * x / (1.0 + 2.0 * s11) -
                           0.5 * std::log((1.0 + 2.0 * s11) * (1.0 + 2.0 * s22));

    const int m_max = 2 * n_max;
    std::vector<SignedLog> q(static_cast<std::size_t>(m_max) + 1);
    q[0] = SignedLog::from(1.0);
    double rho = 2.0 / std::sqrt(std::numbers::pi);
    if (m_max >= 1) q[1] = SignedLog::from(y * rho);
    const SignedLog y_log = SignedLog::from(y);
    const SignedLog s_log = SignedLog::from(s);
    for (int m = 1; m < m_max; ++m) {
        rho = 2.0 / ((m + 1) * rho);
        const SignedLog first = y_log * SignedLog::from(rho) * q[m];
        const SignedLog second = s_log * SignedLog::from(static_cast<double>(m) / (m + 1)) * q[m - 1];
        q[m + 1] = first + second;
    }

    // log(C(2k,k)/4^k) + k log|d|, with the sign of d^k.
    std::vector<SignedLog> weight(static_cast<std::size_t>(n_max) + 1);
    weight[0] = SignedLog::from(1.0);
    const SignedLog d_log = SignedLog::from(d);
    for (int k = 1; k <= n_max; ++k)
        weight[k] = weight[k - 1] * d_log * SignedLog::from((2.0 * k - 1.0) / (2.0 * k));

    std::vector<double> probs(static_cast<std::size_t>(n_max) + 1);
    std::vector<SignedLog> terms;
    terms.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        terms.clear();
        double top = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= n; ++k) {
            const SignedLog t = weight[k] * q[2 * (n - k)];
            if (t.sign == 0) continue;
            terms.push_back(t);
            top = std::max(top, t.log_abs);
        }
        if (terms.empty()) {
            probs[n] = 0.0;
            continue;
        }
        CompensatedSum sum;
        for (const SignedLog& t : terms) sum.add(t.sign * std::exp(t.log_abs - top));
        const double scaled = sum.value();
        double p = scaled == 0.0 ? 0.0 : std::copysign(std::exp(top + log_r00 + std::log(std::abs(scaled))), scaled);
        require(p >= -kNegativeProbTol, ErrorCode::NumericalBreakdown,
                "photon_distribution: p(" + std::to_string(n) + ") = " + std::to_string(p));
        probs[n] = std::max(p, 0.0);
    }
    return probs;
}

double tail_of(const std::vector<double>& probs) {
    CompensatedSum sum;
    for (double p : probs) sum.add(p);
    return std::max(0.0, 1.0 - sum.value());
}

}  // namespace

std::string_view to_string(Target target) noexcept {
    return target == Target::Radiation ? "radiation" : "atoms";
}

QuadratureMoments quadrature_distribution(const GaussianState& state, double phi) {
    require_diagonal_single_mode(state, "quadrature_distribution");
    require(std::isfinite(phi), ErrorCode::InvalidArgument, "quadrature_distribution: phi must be finite");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {c * state.mean()(0) + s * state.mean()(1), c * c * state.cov()(0, 0) + s * s * state.cov()(1, 1)};
}

double fi_homodyne(const GaussianState& ground, const StateDerivative& derivative, const HomodyneSetting& setting) {
    require(ground.modes() == 2, ErrorCode::DimensionMismatch, "fi_homodyne: two-mode ground state required");
    require(std::isfinite(setting.phi), ErrorCode::InvalidArgument, "fi_homodyne: phi must be finite");
    const int mode = setting.target == Target::Radiation ? 0 : 1;
    const std::array<int, 1> keep{mode};
    const QuadratureMoments moments = quadrature_distribution(partial_trace(ground, keep), setting.phi);

    const int i = 2 * mode;
    const double c = std::cos(setting.phi);
    const double s = std::sin(setting.phi);
    const double dmean = c * derivative.dmean(i) + s * derivative.dmean(i + 1);
    const double dvar = c * c * derivative.dcov(i, i) + s * s * derivative.dcov(i + 1, i + 1);
    const double var = moments.variance;
    require(var > 0.0, ErrorCode::SingularCovariance, "fi_homodyne: vanishing quadrature variance");
    return dmean * dmean / var + dvar * dvar / (2.0 * var * var);
}

double fi_homodyne(const DickeParams& params, const HomodyneSetting& setting) {
    return fi_homodyne(ground_state(params), state_derivative(params), setting);
}

DstsParams DstsParams::make(double n_th, double r, double gamma) {
    require(n_th >= 0.0 && std::isfinite(n_th), ErrorCode::InvalidArgument, "DstsParams: n_th must be >= 0");
    require(std::isfinite(r) && std::isfinite(gamma), ErrorCode::InvalidArgument, "DstsParams: non-finite input");
    const double sh = std::sinh(r);
    return {n_th, r, sh * sh, gamma};
}

GaussianState DstsParams::state() const {
    Matrix cov = Matrix::Zero(2, 2);
    cov(0, 0) = 0.5 * (1.0 + 2.0 * n_th) * std::exp(2.0 * r);
    cov(1, 1) = 0.5 * (1.0 + 2.0 * n_th) * std::exp(-2.0 * r);
    Vector mean = Vector::Zero(2);
    mean(0) = std::numbers::sqrt2 * gamma;
    return {mean, cov};
}

DstsParams dsts_params(const GaussianState& state) {
    require_diagonal_single_mode(state, "dsts_params");
    const double s11 = state.cov()(0, 0);
    const double s22 = state.cov()(1, 1);
    require(s11 > 0.0 && s22 > 0.0, ErrorCode::Unphysical, "dsts_params: non-positive variance");
    const double root = std::sqrt(s11 * s22);
    require(root >= 0.5 - kStructuralTol, ErrorCode::Unphysical, "dsts_params: uncertainty relation violated");
    require(std::abs(state.mean()(1)) <= kDiagonalTol * std::max(1.0, std::abs(state.mean()(0))),
            ErrorCode::InvalidArgument, "dsts_params: displacement must lie along x");
    return DstsParams::make(std::max(0.0, root - 0.5), 0.25 * std::log(s11 / s22), state.mean()(0) / std::numbers::sqrt2);
}

MeanPhotonDecomposition mean_photon_decomposition(const GaussianState& state) {
    const DstsParams p = dsts_params(state);
    MeanPhotonDecomposition m;
    m.squeezed = p.n_s;
    m.thermal = p.n_th * (1.0 + 2.0 * p.n_s);
    m.coherent = p.gamma * p.gamma;
    m.total = m.squeezed + m.thermal + m.coherent;
    return m;
}

PhotonNumberKernel photon_kernel(const GaussianState& state) {
    require_diagonal_single_mode(state, "photon_kernel");
    const double s11 = state.cov()(0, 0);
    const double s22 = state.cov()(1, 1);
    require(std::sqrt(s11 * s22) >= 0.5 - kStructuralTol, ErrorCode::Unphysical,
            "photon_kernel: uncertainty relation violated");
    require(std::abs(state.mean()(1)) <= kDiagonalTol * std::max(1.0, std::abs(state.mean()(0))),
            ErrorCode::InvalidArgument, "photon_kernel: displacement must lie along x");
    const double x = state.mean()(0);
    const double den = (1.0 + 2.0 * s11) * (1.0 + 2.0 * s22);
    PhotonNumberKernel k;
    k.r00 = 2.0 * std::exp(-x * x / (1.0 + 2.0 * s11)) / std::sqrt(den);
    k.a_tilde = (4.0 * s11 * s22 - 1.0) / den;
    k.b_tilde = 2.0 * (s22 - s11) / den;
    k.c_tilde = std::numbers::sqrt2 * x / (1.0 + 2.0 * s11);
    return k;
}

PhotonDistribution photon_distribution(const GaussianState& state, const PhotonOptions& options) {
    photon_kernel(state);  // validates the state
    require(options.tail_tolerance > 0.0, ErrorCode::InvalidArgument, "photon_distribution: tail tolerance must be > 0");

    PhotonDistribution out;
    if (options.n_max) {
        require(*options.n_max >= 0, ErrorCode::InvalidArgument, "photon_distribution: n_max must be >= 0");
        require(*options.n_max <= options.hard_limit, ErrorCode::CutoffOverflow,
                "photon_distribution: n_max exceeds hard limit " + std::to_string(options.hard_limit));
        out.n_max = *options.n_max;
        out.probs = photon_probabilities(state, out.n_max);
        out.tail_mass = tail_of(out.probs);
        return out;
    }

    const double mean_n = mean_photon_decomposition(state).total;
    const double start = std::ceil(10.0 * mean_n + 50.0);
    require(start <= options.hard_limit, ErrorCode::CutoffOverflow,
            "photon_distribution: mean photon number requires a cutoff beyond the hard limit");
    int n_max = static_cast<int>(start);
    while (true) {
        out.n_max = n_max;
        out.probs = photon_probabilities(state, n_max);
        out.tail_mass = tail_of(out.probs);
        if (out.tail_mass < options.tail_tolerance) return out;
        require(n_max < options.hard_limit, ErrorCode::NonConvergedSeries,
                "photon_distribution: tail " + std::to_string(out.tail_mass) + " above tolerance at hard limit");
        n_max = std::min(options.hard_limit, 2 * n_max);
    }
}

double discrete_fisher_information(const std::vector<double>& p, const std::vector<double>& dp) {
    require(p.size() == dp.size(), ErrorCode::DimensionMismatch, "discrete_fisher_information: size mismatch");
    CompensatedSum sum;
    for (std::size_t n = 0; n < p.size(); ++n)
        if (p[n] >= kSkipProbability) sum.add(dp[n] * dp[n] / p[n]);
    return sum.value();
}

PhotonCountingResult fi_photon_counting(const DickeParams& params) {
    const GaussianState center = reduced_radiation_state(params);
    const double h = default_step(params);

    PhotonDistribution base;
    try {
        base = photon_distribution(center);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CutoffOverflow) fail(ErrorCode::NonConvergedSeries, e.what());
        throw;
    }

    // Shifted distributions share the cutoff of the central one.
    const PhotonOptions fixed{base.n_max, 1e-10, std::max(base.n_max, PhotonOptions{}.hard_limit)};
    auto probs_at = [&](double offset) {
        const GaussianState full = detail::ground_state_signed(params.with_lambda(params.lam + offset));
        const std::array<int, 1> keep{0};
        const std::vector<double> p = photon_distribution(partial_trace(full, keep), fixed).probs;
        return Eigen::Map<const Vector>(p.data(), static_cast<Eigen::Index>(p.size())).eval();
    };
    const Vector derivative = richardson_derivative(probs_at, 0.0, h);

    PhotonCountingResult r;
    r.n_max = base.n_max;
    r.fi = discrete_fisher_information(base.probs,
                                       std::vector<double>(derivative.data(), derivative.data() + derivative.size()));
    return r;
}

}  // namespace dicke
