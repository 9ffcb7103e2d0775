#include "dicke/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include "dicke/numeric.hpp"

namespace dicke::oracle {

namespace {

constexpr double kTraceLoss = 1e-9;
constexpr double kNormTol = 1e-6;
constexpr int kMaxAdaptiveDim = 1500;

// gamma (a^+ - a) on d Fock states.
Eigen::SparseMatrix<double> displacement_generator(double gamma, int d) {
    std::vector<Eigen::Triplet<double>> entries;
    for (int n = 1; n < d; ++n) {
        const double c = gamma * std::sqrt(static_cast<double>(n));
        entries.emplace_back(n, n - 1, c);
        entries.emplace_back(n - 1, n, -c);
    }
    Eigen::SparseMatrix<double> g(d, d);
    g.setFromTriplets(entries.begin(), entries.end());
    return g;
}

// exp(G) X by a Taylor series on steps small enough that |G / steps| <= 1.
Eigen::MatrixXd apply_exponential(const Eigen::SparseMatrix<double>& g, Eigen::MatrixXd x) {
    double norm = 0.0;
    for (int k = 0; k < g.outerSize(); ++k) {
        double col = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(g, k); it; ++it) col += std::abs(it.value());
        norm = std::max(norm, col);
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
    for (int s = 0; s < steps; ++s) {
        Eigen::MatrixXd term = x;
        for (int k = 1; k < 100; ++k) {
            term = (g * term) / (static_cast<double>(steps) * k);
            x += term;
            if (term.cwiseAbs().maxCoeff() <= 1e-18 * x.cwiseAbs().maxCoeff()) break;
        }
    }
    return x;
}

// exp(r/2 (a^+2 - a^2)) couples n only to n +- 2, so the even and odd
// sectors are exponentiated separately.
Eigen::MatrixXd squeeze_operator(double r, int d) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (int parity = 0; parity < 2; ++parity) {
        const int size = (d - parity + 1) / 2;
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
        for (int i = 0; i + 1 < size; ++i) {
            const double n = 2.0 * i + parity;
            const double c = 0.5 * r * std::sqrt((n + 1.0) * (n + 2.0));
            gen(i + 1, i) = c;
            gen(i, i + 1) = -c;
        }
        const Eigen::MatrixXd block = gen.exp();
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) s(2 * i + parity, 2 * j + parity) = block(i, j);
    }
    return s;
}

double purity_defect(const GaussianState& s) {
    // A pure M-mode state has Det(2 sigma) = 1.
    return std::abs((2.0 * s.cov()).determinant() - 1.0);
}

}  // namespace

std::vector<double> FockStateMatrix::diagonal() const {
    std::vector<double> d(dim);
    for (int n = 0; n < dim; ++n) d[n] = matrix(n, n).real();
    return d;
}

double FockStateMatrix::trace() const {
    CompensatedSum s;
    for (int n = 0; n < dim; ++n) s.add(matrix(n, n).real());
    return s.value();
}

double FockStateMatrix::mean_photon_number() const {
    CompensatedSum s;
    for (int n = 0; n < dim; ++n) s.add(n * matrix(n, n).real());
    return s.value();
}

namespace {

FockStateMatrix build_fixed(const DstsParams& params, int d) {
    require(d >= 1, ErrorCode::InvalidArgument, "build_dsts_fock: dim must be >= 1");
    const int padded = 2 * d + 60;

    // Thermal weights below 1e-20 are dropped, so only the first columns of
    // U = D(gamma) S(r) are needed.
    std::vector<double> weights;
    const double q = params.n_th / (1.0 + params.n_th);
    for (int n = 0; n < padded; ++n) {
        const double w = std::pow(q, n) / (1.0 + params.n_th);
        if (w < 1e-20) break;
        weights.push_back(w);
    }
    const int cols = static_cast<int>(weights.size());
    const Eigen::MatrixXd squeezed = squeeze_operator(params.r, padded).leftCols(cols);
    const Eigen::MatrixXd u = apply_exponential(displacement_generator(params.gamma, padded), squeezed).topRows(d);
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), cols);
    const Eigen::MatrixXd rho = u * w.asDiagonal() * u.transpose();

    FockStateMatrix out;
    out.dim = d;
    out.matrix = rho.cast<std::complex<double>>();
    return out;
}

}  // namespace

FockStateMatrix build_dsts_fock(const DstsParams& params, std::optional<int> dim) {
    if (dim) {
        FockStateMatrix out = build_fixed(params, *dim);
        const double loss = 1.0 - out.trace();
        require(loss <= kTraceLoss, ErrorCode::TruncationInsufficient,
                "build_dsts_fock: trace lost to truncation is " + std::to_string(loss));
        return out;
    }
    const double n_mean = params.n_s + params.n_th * (1.0 + 2.0 * params.n_s) + params.gamma * params.gamma;
    int d = static_cast<int>(std::ceil(10.0 * n_mean + 40.0));
    while (true) {
        FockStateMatrix out = build_fixed(params, d);
        const double loss = 1.0 - out.trace();
        if (loss <= kTraceLoss) return out;
        require(d < kMaxAdaptiveDim, ErrorCode::TruncationInsufficient,
                "build_dsts_fock: trace lost to truncation is " + std::to_string(loss) + " at dim " +
                    std::to_string(d));
        d = std::min(kMaxAdaptiveDim, d + d / 2);
    }
}

double pure_overlap(const GaussianState& s1, const GaussianState& s2) {
    require(s1.modes() == s2.modes(), ErrorCode::DimensionMismatch, "pure_overlap: mode count differs");
    require(purity_defect(s1) < 1e-8 && purity_defect(s2) < 1e-8, ErrorCode::NonPureState,
            "pure_overlap: inputs must be pure");
    const Matrix sum = s1.cov() + s2.cov();
    const Vector delta = s1.mean() - s2.mean();
    const Eigen::LDLT<Matrix> ldlt(sum);
    const double quad = delta.dot(ldlt.solve(delta));
    return std::exp(-0.5 * quad) / std::sqrt(sum.determinant());
}

double fidelity_qfi(const DickeParams& params, double delta) {
    require(delta > 0.0, ErrorCode::InvalidArgument, "fidelity_qfi: delta must be > 0");
    const GaussianState lo = detail::ground_state_signed(params.with_lambda(params.lam - 0.5 * delta));
    const GaussianState hi = detail::ground_state_signed(params.with_lambda(params.lam + 0.5 * delta));
    const double f = pure_overlap(lo, hi);
    const double one_minus_sqrt = -std::expm1(0.5 * std::log(f));
    return 8.0 * one_minus_sqrt / (delta * delta);
}

double fi_integral_continuous(const std::function<double(double, double)>& pdf, double lam, double h,
                              const Grid1D& grid) {
    require(grid.hi > grid.lo && grid.intervals >= 2, ErrorCode::InvalidArgument, "fi_integral_continuous: bad grid");
    require(h > 0.0, ErrorCode::InvalidArgument, "fi_integral_continuous: h must be > 0");
    const int n = grid.intervals + grid.intervals % 2;
    const double dx = (grid.hi - grid.lo) / n;
    CompensatedSum norm, info;
    for (int i = 0; i <= n; ++i) {
        const double x = grid.lo + i * dx;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double p = pdf(lam, x);
        norm.add(w * p);
        if (p > 1e-300) {
            const double dp = (pdf(lam + h, x) - pdf(lam - h, x)) / (2.0 * h);
            info.add(w * dp * dp / p);
        }
    }
    const double total = norm.value() * dx / 3.0;
    require(std::abs(total - 1.0) <= kNormTol, ErrorCode::NonNormalizedDensity,
            "fi_integral_continuous: density integrates to " + std::to_string(total));
    return info.value() * dx / 3.0;
}

double fi_sum_discrete(const std::function<std::vector<double>(double)>& pmf, double lam, double h) {
    require(h > 0.0, ErrorCode::InvalidArgument, "fi_sum_discrete: h must be > 0");
    const std::vector<double> p = pmf(lam);
    const std::vector<double> up = pmf(lam + h);
    const std::vector<double> down = pmf(lam - h);
    const std::size_t n = std::min({p.size(), up.size(), down.size()});
    CompensatedSum norm, info;
    for (std::size_t i = 0; i < p.size(); ++i) norm.add(p[i]);
    require(std::abs(norm.value() - 1.0) <= kNormTol, ErrorCode::NonNormalizedDensity,
            "fi_sum_discrete: masses sum to " + std::to_string(norm.value()));
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] <= 0.0) continue;
        const double dp = (up[i] - down[i]) / (2.0 * h);
        info.add(dp * dp / p[i]);
    }
    return info.value();
}

}  // namespace dicke::oracle
