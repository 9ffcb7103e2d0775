#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dicke/gaussian.hpp"
#include "dicke/model.hpp"
#include "dicke/serialization.hpp"

using namespace dicke;

namespace {

Matrix two_mode_squeezer(double r) {
    Matrix s = Matrix::Zero(4, 4);
    const double c = std::cosh(r), sh = std::sinh(r);
    s(0, 0) = s(1, 1) = s(2, 2) = s(3, 3) = c;
    s(0, 2) = s(2, 0) = sh;
    s(1, 3) = s(3, 1) = -sh;
    return s;
}

Matrix single_squeezer(double r) {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = std::exp(r);
    s(1, 1) = std::exp(-r);
    return s;
}

// Composite Simpson rule on [-L, L]^2.
template <class F>
double simpson2d(F f, double lo_x, double hi_x, double lo_p, double hi_p, int n) {
    const double hx = (hi_x - lo_x) / n, hp = (hi_p - lo_p) / n;
    auto w = [n](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double sum = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) sum += w(i) * w(j) * f(lo_x + i * hx, lo_p + j * hp);
    return sum * hx * hp / 9.0;
}

}  // namespace

TEST_CASE("symplectic form has the block structure") {
    const Matrix om = symplectic_form(2);
    CHECK(om(0, 1) == 1.0);
    CHECK(om(1, 0) == -1.0);
    CHECK(om(2, 3) == 1.0);
    CHECK(om(0, 3) == 0.0);
    CHECK((om * om.transpose() - Matrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("state construction validates input") {
    CHECK_THROWS_AS(GaussianState(Vector::Zero(3), Matrix::Identity(3, 3)), Error);
    CHECK_THROWS_AS(GaussianState(Vector::Zero(2), Matrix::Identity(4, 4)), Error);
    Matrix asym = 0.5 * Matrix::Identity(2, 2);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(GaussianState(Vector::Zero(2), asym), Error);
    Matrix bad = 0.5 * Matrix::Identity(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(GaussianState(Vector::Zero(2), bad), Error);
    CHECK_THROWS_AS(GaussianState::thermal(-1.0), Error);
}

TEST_CASE("purity of standard states") {
    CHECK(purity(GaussianState::vacuum(1).cov()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity(GaussianState::vacuum(3).cov()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity(GaussianState::thermal(1.0).cov()) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(purity(Matrix::Zero(2, 2)), Error);
}

TEST_CASE("apply_symplectic") {
    const GaussianState th = GaussianState::thermal(0.7);
    const GaussianState same = apply_symplectic(th, SymplecticTransform::identity(1));
    CHECK((same.cov() - th.cov()).norm() == 0.0);

    SymplecticTransform disp = SymplecticTransform::identity(1);
    disp.displacement(0) = std::numbers::sqrt2 * 0.8;
    const GaussianState coh = apply_symplectic(GaussianState::vacuum(1), disp);
    CHECK(coh.mean()(0) == doctest::Approx(std::numbers::sqrt2 * 0.8));
    CHECK((coh.cov() - 0.5 * Matrix::Identity(2, 2)).norm() == 0.0);

    const auto tms = SymplecticTransform::from_matrix(two_mode_squeezer(0.9));
    CHECK(tms.is_symplectic());
    CHECK(tms.symplectic_residual() < 1e-12);
    const GaussianState out = apply_symplectic(GaussianState::vacuum(2), tms);
    CHECK(std::abs(purity(out.cov()) - 1.0) < 1e-10);
    const SymplecticSpectrum spec = symplectic_spectrum(out.cov());
    CHECK(std::abs(spec.d_plus - 0.5) < 1e-10);
    CHECK(std::abs(spec.d_minus - 0.5) < 1e-10);

    Matrix not_symplectic = Matrix::Identity(2, 2);
    not_symplectic(0, 0) = 2.0;
    CHECK_FALSE(SymplecticTransform{not_symplectic, Vector::Zero(2)}.is_symplectic());
    CHECK_THROWS_AS(apply_symplectic(GaussianState::vacuum(1), tms), Error);
}

TEST_CASE("partial trace") {
    const GaussianState vac2 = GaussianState::vacuum(2);
    const std::vector<int> keep0{0};
    const GaussianState r = partial_trace(vac2, keep0);
    CHECK(r.modes() == 1);
    CHECK((r.cov() - 0.5 * Matrix::Identity(2, 2)).norm() == 0.0);

    SymplecticTransform t = SymplecticTransform::from_matrix(two_mode_squeezer(0.4));
    t.displacement << 0.1, 0.2, 0.3, 0.4;
    const GaussianState corr = apply_symplectic(vac2, t);
    const std::vector<int> keep1{1};
    const GaussianState m2 = partial_trace(corr, keep1);
    CHECK((m2.cov() - corr.cov().block(2, 2, 2, 2)).norm() == 0.0);
    CHECK((m2.mean() - corr.mean().segment(2, 2)).norm() == 0.0);
    CHECK(std::sqrt(m2.cov().determinant()) >= 0.5 - 1e-10);

    const std::vector<int> swapped{1, 0};
    const GaussianState sw = partial_trace(corr, swapped);
    CHECK(sw.cov()(0, 0) == corr.cov()(2, 2));
    CHECK(sw.cov()(0, 2) == corr.cov()(2, 0));

    const std::vector<int> empty;
    const std::vector<int> out_of_range{2};
    const std::vector<int> dup{0, 0};
    CHECK_THROWS_AS(partial_trace(vac2, empty), Error);
    CHECK_THROWS_AS(partial_trace(vac2, out_of_range), Error);
    CHECK_THROWS_AS(partial_trace(vac2, dup), Error);

    DickeParams p;
    p.lam = 0.3;
    const GaussianState g = ground_state(p);
    const GaussianState rad = partial_trace(g, keep0);
    CHECK(rad.mean().norm() == 0.0);
    CHECK(rad.cov()(0, 1) == 0.0);
    CHECK(rad.cov()(0, 0) == g.cov()(0, 0));
    CHECK(rad.cov()(1, 1) == g.cov()(1, 1));
}

TEST_CASE("symplectic spectrum") {
    const SymplecticSpectrum vac = symplectic_spectrum(0.5 * Matrix::Identity(4, 4));
    CHECK(vac.d_plus == doctest::Approx(0.5));
    CHECK(vac.d_minus == doctest::Approx(0.5));
    CHECK(vac.ppt_d_plus == doctest::Approx(0.5));
    CHECK(vac.ppt_d_minus == doctest::Approx(0.5));
    CHECK(vac.i4 == doctest::Approx(1.0 / 16.0));

    for (double r : {0.1, 0.5, 1.2}) {
        Matrix s = two_mode_squeezer(r);
        Matrix local = Matrix::Identity(4, 4);
        local.block(0, 0, 2, 2) = single_squeezer(0.3);
        const Matrix cov = 0.5 * (local * s) * (local * s).transpose();
        const SymplecticSpectrum sp = symplectic_spectrum(cov);
        CHECK(std::abs(sp.i4 - 1.0 / 16.0) < 1e-12);
        CHECK(std::abs(sp.i1 + sp.i2 + 2.0 * sp.i3 - 0.5) < 1e-12);
        // Logarithmic negativity of a two-mode squeezed vacuum is 2r, unchanged by local operations.
        CHECK(log_negativity(cov) == doctest::Approx(2.0 * r).epsilon(1e-10));
    }

    DickeParams p;
    p.lam = 0.4;
    const SymplecticSpectrum dk = symplectic_spectrum(ground_state(p).cov());
    CHECK(dk.ppt_d_minus < 0.5);

    Vector diag(4);
    diag << 1.0, -1.0, 1.0, 1.0;
    const Matrix unphys = diag.asDiagonal();
    CHECK_THROWS_AS(symplectic_spectrum(unphys), Error);
    CHECK_THROWS_AS(symplectic_spectrum(Matrix::Identity(2, 2)), Error);
}

TEST_CASE("log negativity of separable states") {
    Matrix prod = 0.5 * Matrix::Identity(4, 4);
    CHECK(log_negativity(prod) == 0.0);
    prod.block(0, 0, 2, 2) = 1.5 * Matrix::Identity(2, 2);
    CHECK(log_negativity(prod) == 0.0);
}

TEST_CASE("min symplectic eigenvalue") {
    CHECK(min_symplectic_eigenvalue(GaussianState::thermal(2.0).cov()) == doctest::Approx(2.5));
    const Matrix cov = 0.5 * two_mode_squeezer(0.7) * two_mode_squeezer(0.7).transpose();
    CHECK(min_symplectic_eigenvalue(cov) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("wigner function") {
    const GaussianState vac = GaussianState::vacuum(1);
    Vector origin = Vector::Zero(2);
    CHECK(wigner_at(vac, origin) == doctest::Approx(1.0 / std::numbers::pi));
    Vector pt(2);
    pt << 1.0, 0.0;
    CHECK(wigner_at(vac, pt) == doctest::Approx(std::exp(-1.0) / std::numbers::pi));
    CHECK_THROWS_AS(wigner_at(GaussianState(Vector::Zero(2), Matrix::Zero(2, 2)), origin), Error);
    CHECK_THROWS_AS(wigner_at(vac, Vector::Zero(4)), Error);

    DickeParams p;
    p.lam = 0.3;
    const GaussianState rad = reduced_radiation_state(p);
    Vector x(2);
    const double total = simpson2d(
        [&](double a, double b) {
            x << a, b;
            return wigner_at(rad, x);
        },
        -8, 8, -8, 8, 400);
    CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("characteristic function") {
    const GaussianState vac = GaussianState::vacuum(1);
    CHECK(std::abs(characteristic_function_at(vac, Vector::Zero(2)) - 1.0) < 1e-15);
    Vector l(2);
    l << 1.0, 0.0;
    CHECK(std::abs(characteristic_function_at(vac, l) - std::exp(-0.25)) < 1e-15);
    CHECK_THROWS_AS(characteristic_function_at(vac, Vector::Zero(4)), Error);

    // chi(L) = integral of W(R) exp(-i L^T Omega R) over phase space.
    Matrix cov(2, 2);
    cov << 0.9, 0.2, 0.2, 0.4;
    Vector mean(2);
    mean << 0.3, -0.5;
    const GaussianState s(mean, cov);
    l << 0.7, -0.4;
    const Matrix om = symplectic_form(1);
    Vector r(2);
    const double re = simpson2d(
        [&](double a, double b) {
            r << a, b;
            return wigner_at(s, r) * std::cos(l.dot(om * r));
        },
        -9, 9, -9, 9, 400);
    const double im = simpson2d(
        [&](double a, double b) {
            r << a, b;
            return -wigner_at(s, r) * std::sin(l.dot(om * r));
        },
        -9, 9, -9, 9, 400);
    const std::complex<double> chi = characteristic_function_at(s, l);
    CHECK(std::abs(chi.real() - re) < 1e-4);
    CHECK(std::abs(chi.imag() - im) < 1e-4);
}

TEST_CASE("state json round trip") {
    DickeParams p;
    p.lam = 0.8;
    const GaussianState g = ground_state(p);
    const GaussianState back = state_from_json(state_to_json(g));
    CHECK((back.cov() - g.cov()).norm() == 0.0);
    CHECK((back.mean() - g.mean()).norm() == 0.0);
    CHECK_THROWS_AS(state_from_json("{\"modes\": 1}"), Error);
    CHECK_THROWS_AS(state_from_json("not json"), Error);
}
