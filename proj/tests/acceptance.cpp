// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dicke/estimation.hpp"
#include "dicke/measurements.hpp"
#include "dicke/oracle.hpp"

using namespace dicke;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

DickeParams at(double lam, double omega = 1.0, double omega0 = 1.0, int n = 100) {
    DickeParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.lam = lam;
    p.n_atoms = n;
    return p;
}

// Ten log-spaced distances from 1e-2 down to 1e-3.
std::vector<double> distances() {
    std::vector<double> d;
    for (int i = 0; i < 10; ++i) d.push_back(std::pow(10.0, -2.0 - i / 9.0));
    return d;
}

PowerLawFit fit_side(const std::function<double(double)>& f, double lc, double sign) {
    std::vector<std::pair<double, double>> samples;
    for (double d : distances()) samples.emplace_back(lc + sign * d, f(lc + sign * d));
    return fit_power_law(samples, lc);
}

double homodyne_ratio(const DickeParams& p, double phi, Target t) { return fi_homodyne(p, {phi, t}) / qfi(p).qfi; }

Outcome qfi_critical_scaling() {
    Timer timer;
    const double lc = 0.5;
    bool pass = true;
    std::string detail;
    for (double sign : {-1.0, 1.0}) {
        const PowerLawFit fit = fit_side([](double l) { return qfi(at(l)).qfi; }, lc, sign);
        pass = pass && std::abs(fit.exponent + 2.0) <= 0.05 && std::abs(fit.prefactor / 0.125 - 1.0) <= 0.05;
        detail += fmt("%s: exponent %.4f prefactor %.4f; ", sign < 0 ? "normal" : "superradiant", fit.exponent,
                      fit.prefactor);
    }
    const double t = timer.seconds();
    pass = pass && t < 1.0;
    return {pass, detail + fmt("%.3f s", t)};
}

Outcome qfi_limits() {
    bool pass = true;
    std::string detail;
    for (auto [w, w0] : {std::pair{1.0, 1.0}, {0.25, 1.0}}) {
        const double h = qfi(at(1e-4, w, w0)).qfi;
        const double ref = 4.0 / ((w + w0) * (w + w0));
        pass = pass && std::abs(h - ref) <= 1e-3;
        detail += fmt("H(1e-4, w=%g) = %.6f vs %.6f; ", w, h, ref);
    }
    const double h = qfi(at(50.0)).qfi;
    pass = pass && std::abs(h / 400.0 - 1.0) <= 0.01;
    return {pass, detail + fmt("H(50) = %.4f vs 400", h)};
}

Outcome homodyne_criticality() {
    bool pass = true;
    std::string detail;
    for (double lam : {0.499, 0.501}) {
        for (Target t : {Target::Radiation, Target::Atoms}) {
            for (double phi : {0.0, std::numbers::pi / 3}) {
                const double r = homodyne_ratio(at(lam), phi, t);
                pass = pass && r >= 0.99 && r <= 1.0 + 1e-6;
                detail += fmt("%.3f/%s/%.3f: %.4f; ", lam, std::string(to_string(t)).c_str(), phi, r);
            }
        }
    }
    return {pass, detail};
}

Outcome homodyne_large_coupling() {
    bool pass = true;
    std::string detail;
    for (double phi : {0.0, std::numbers::pi / 6, std::numbers::pi / 3}) {
        const double r = homodyne_ratio(at(50.0), phi, Target::Radiation);
        const double c2 = std::cos(phi) * std::cos(phi);
        pass = pass && std::abs(r / c2 - 1.0) <= 0.01;
        detail += fmt("radiation %.3f: %.5f vs %.5f; ", phi, r, c2);
    }
    const double atoms = homodyne_ratio(at(50.0), 0.0, Target::Atoms);
    pass = pass && atoms < 1e-3;
    return {pass, detail + fmt("atoms %.3e", atoms)};
}

Outcome homodyne_small_coupling() {
    const double lam = 1e-2;
    auto coefficient = [](double a, double b, double phi) {
        const double num = a + (a + b) * std::cos(2.0 * phi);
        return 2.0 * num * num / (a * a * (a + b) * (a + b));
    };
    bool pass = true;
    std::string detail;
    for (double w : {1.0, 0.25}) {
        for (double phi : {0.0, std::numbers::pi / 4}) {
            const double rad = homodyne_ratio(at(lam, w), phi, Target::Radiation);
            const double atoms = homodyne_ratio(at(lam, w), phi, Target::Atoms);
            const double rad_ref = coefficient(w, 1.0, phi) * lam * lam;
            const double atoms_ref = coefficient(1.0, w, phi) * lam * lam;
            pass = pass && std::abs(rad / rad_ref - 1.0) <= 0.05 && std::abs(atoms / atoms_ref - 1.0) <= 0.05;
            detail += fmt("w=%g phi=%.3f: %.4f / %.4f; ", w, phi, rad / rad_ref, atoms / atoms_ref);
        }
    }
    return {pass, "ratio to expression " + detail};
}

Outcome photon_oracle() {
    Timer timer;
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> nbar(0.0, 2.0), r(-1.0, 1.0), gamma(-2.0, 2.0);
    double worst_p = 0.0, worst_norm = 0.0, worst_mean = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DstsParams dp = DstsParams::make(nbar(rng), r(rng), gamma(rng));
        const GaussianState s = dp.state();
        const PhotonDistribution dist = photon_distribution(s);
        const oracle::FockStateMatrix fock = oracle::build_dsts_fock(dp);
        const std::vector<double> ref = fock.diagonal();
        for (int n = 0; n <= 30; ++n) {
            const double p = n < static_cast<int>(dist.probs.size()) ? dist.probs[n] : 0.0;
            worst_p = std::max(worst_p, std::abs(p - ref[n]));
        }
        double total = 0.0, mean = 0.0;
        for (std::size_t n = 0; n < dist.probs.size(); ++n) {
            total += dist.probs[n];
            mean += static_cast<double>(n) * dist.probs[n];
        }
        const double expected = mean_photon_decomposition(s).total;
        worst_norm = std::max(worst_norm, std::abs(total - 1.0));
        worst_mean = std::max(worst_mean, expected > 0.0 ? std::abs(mean / expected - 1.0) : std::abs(mean));
    }
    const double t = timer.seconds();
    const bool pass = worst_p <= 1e-8 && worst_norm <= 1e-8 && worst_mean <= 1e-6 && t < 30.0;
    return {pass, fmt("max |dp| %.2e, max |sum - 1| %.2e, max mean error %.2e, %.2f s", worst_p, worst_norm,
                      worst_mean, t)};
}

Outcome photon_near_optimality() {
    auto ratio = [](double lam) { return fi_photon_counting(at(lam)).fi / qfi(at(lam)).qfi; };
    bool pass = true;
    std::string detail;
    for (double lam : {0.49, 0.51}) {
        const double r = ratio(lam);
        pass = pass && r >= 0.9;
        detail += fmt("%.2f: %.4f; ", lam, r);
    }
    for (double sign : {-1.0, 1.0}) {
        double previous = -1.0;
        bool monotone = true;
        detail += sign < 0 ? "normal [" : "superradiant [";
        for (double d : {0.1, 0.05, 0.02, 0.01}) {
            const double r = ratio(0.5 + sign * d);
            monotone = monotone && r > previous;
            previous = r;
            detail += fmt(" %.4f", r);
        }
        detail += " ]; ";
        pass = pass && monotone;
    }
    return {pass, detail};
}

Outcome fidelity_oracle() {
    double worst = 0.0;
    for (double lam : {0.1, 0.3, 0.45, 0.6, 1.0, 2.0}) {
        const double h = qfi(at(lam)).qfi;
        worst = std::max(worst, std::abs(h - oracle::fidelity_qfi(at(lam), 1e-5)) / h);
    }
    return {worst < 1e-3, fmt("max relative deviation %.2e", worst)};
}

std::vector<double> structural_grid() {
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) {
        const double lam = 1.5 * i / 199.0;
        if (std::abs(lam - 0.5) >= 1e-4) grid.push_back(lam);
    }
    return grid;
}

Outcome structural_suite() {
    const Matrix half = 0.5 * Matrix::Identity(4, 4);
    double purity_err = 0.0, sympl = 0.0, nu = 0.0, closed = 0.0;
    const std::vector<double> grid = structural_grid();
    for (double lam : grid) {
        const DickeParams p = at(lam);
        const DickeDerived d = derive(p);
        const GaussianState g = ground_state(p);
        purity_err = std::max(purity_err, std::abs(purity(g.cov()) - 1.0));
        const SymplecticTransform chain = symplectic_chain(d);
        sympl = std::max({sympl, chain.symplectic_residual(),
                          SymplecticTransform::from_matrix(normal_mode_transform(d)).symplectic_residual()});
        nu = std::max(nu, std::abs(sld_coefficients(p).nu));
        const Matrix from_chain = chain.matrix * half * chain.matrix.transpose();
        closed = std::max(closed, (closed_form_covariance(d) - from_chain).cwiseAbs().maxCoeff());
    }
    const bool pass = purity_err <= 1e-10 && sympl < 1e-10 && nu <= 1e-6 && closed <= 1e-10;
    return {pass, fmt("%zu points: purity %.1e, symplectic %.1e, nu %.1e, closed form %.1e", grid.size(), purity_err,
                      sympl, nu, closed)};
}

Outcome entanglement_shape() {
    const double e0 = log_negativity(ground_state(at(0.0)).cov());
    const std::vector<double> grid = structural_grid();
    bool positive = true;
    double best = -1.0, best_lam = 0.0;
    for (double lam : grid) {
        const double e = log_negativity(ground_state(at(lam)).cov());
        if (lam > 0.0 && lam < 0.5) positive = positive && e > 0.0;
        if (e > best) {
            best = e;
            best_lam = lam;
        }
    }
    const double step = 1.5 / 199.0;
    const bool pass = std::abs(e0) <= 1e-12 && positive && std::abs(best_lam - 0.5) <= step;
    return {pass, fmt("E_N(0) = %.1e, positive below lambda_c: %s, max %.4f at %.5f (step %.5f)", e0,
                      positive ? "yes" : "no", best, best_lam, step)};
}

Outcome sld_asymptotics() {
    const double lc = 0.5;
    auto dominant_phi = [](double lam) { return sld_in_local_frame(at(lam)).phi.cwiseAbs().maxCoeff(); };
    bool pass = true;
    std::string detail;
    for (double sign : {-1.0, 1.0}) {
        const PowerLawFit fit = fit_side(dominant_phi, lc, sign);
        pass = pass && std::abs(fit.exponent + 1.5) <= 0.05;
        detail += fmt("Phi exponent %s %.4f; ", sign < 0 ? "normal" : "superradiant", fit.exponent);
    }
    double lo = INFINITY, hi = 0.0;
    for (double d : distances()) {
        const double z = sld_in_local_frame(at(lc + d)).zeta.norm();
        lo = std::min(lo, z);
        hi = std::max(hi, z);
    }
    const double spread = (hi - lo) / (0.5 * (hi + lo));
    // |sqrt(32 N / (w^3 w0^2 (w^2 + w0^2))) (w0^2, -w^2)| at w = w0 = 1, N = 100.
    const double asymptote = std::sqrt(32.0 * 100.0 / 2.0) * std::sqrt(2.0);
    pass = pass && spread <= 0.02;
    return {pass, detail + fmt("|zeta| in [%.4f, %.4f], spread %.2f%% (asymptote %.4f)", lo, hi, 100.0 * spread,
                               asymptote)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"qfi critical scaling", qfi_critical_scaling},
        {"qfi limits", qfi_limits},
        {"homodyne optimality at criticality", homodyne_criticality},
        {"homodyne large-coupling limit", homodyne_large_coupling},
        {"homodyne small-coupling limit", homodyne_small_coupling},
        {"photon statistics oracle equivalence", photon_oracle},
        {"photon-counting near-optimality", photon_near_optimality},
        {"qfi fidelity-oracle equivalence", fidelity_oracle},
        {"structural suite", structural_suite},
        {"entanglement curve shape", entanglement_shape},
        {"sld asymptotics", sld_asymptotics},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
