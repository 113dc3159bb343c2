#include <doctest.h>

#include "oracles.hpp"
#include "tritospec/conditioning.hpp"
#include "tritospec/numeric.hpp"
#include "tritospec/spectra.hpp"

using namespace tritospec;
namespace cond = tritospec::conditioning;
namespace sp = tritospec::spectra;

TEST_CASE("order-two gap is 2 sqrt|sigma tau|") {
    const TriToeplitz T{2, Complex(3, 1), Complex(0.4), Complex(-0.2, 0.1)};
    const double expect = 2.0 * std::sqrt(std::abs(T.sigma * T.tau));
    CHECK(cond::min_gap(T, 1) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(cond::min_gap(T, 2) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("gap formula equals brute force") {
    const TriToeplitz T{17, Complex(3), Complex(0.7), Complex(0.7)};
    const Vector lam = sp::eigenvalues(T);
    for (Index h = 1; h <= T.n; ++h) {
        const double bf = oracles::brute_force_gap(lam, h);
        CHECK(std::abs(cond::min_gap(T, h) - bf) <= 1e-12 * bf);
    }
    const double g = oracles::brute_force_global_gap(lam);
    CHECK(std::abs(cond::global_min_gap(T) - g) <= 1e-12 * g);
    // attained by the first adjacent pair
    CHECK(std::abs(lam(0) - lam(1)) == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("corner-case gap formulas equal brute force") {
    const TriToeplitz T{11, Complex(1), Complex(0.3), Complex(2)};
    for (ToeplitzTypeCase c : kAllTypeCases) {
        const Vector lam = sp::eigenvalues(T, c);
        for (Index h = 1; h <= T.n; ++h) {
            const double bf = oracles::brute_force_gap(lam, h);
            CHECK(std::abs(cond::min_gap(T, c, h) - bf) <= 1e-12 * bf);
        }
        const double g = oracles::brute_force_global_gap(lam);
        CHECK(std::abs(cond::global_min_gap(T, c) - g) <= 1e-12 * g);
    }
}

TEST_CASE("tabulated global minima") {
    const TriToeplitz T{9, Complex(2), Complex(0), Complex(0.5)};
    const double root = std::sqrt(std::abs(T.sigma * T.tau));
    const double n = 9;
    CHECK(cond::global_min_gap(T, ToeplitzTypeCase::PlusPlus) ==
          doctest::Approx(4 * root * std::pow(std::sin(M_PI / (2 * n)), 2)).epsilon(1e-13));
    // the +/- corner family needs the half-angle prefactor to match its spectrum
    CHECK(cond::global_min_gap(T, ToeplitzTypeCase::PlusMinus) ==
          doctest::Approx(4 * root * std::sin(M_PI / (2 * n)) * std::sin(M_PI / n))
              .epsilon(1e-13));
}

TEST_CASE("eigenvalue condition is one for equal coupling moduli") {
    const TriToeplitz T{14, std::polar(1.3, 0.4), Complex(2, 1), std::polar(1.3, -0.9)};
    for (Index h = 1; h <= T.n; ++h)
        CHECK(cond::eig_condition(T, h) == doctest::Approx(1.0).epsilon(1e-12));
    const TriToeplitz one{1, Complex(5), Complex(2), Complex(3)};
    CHECK(cond::eig_condition(one, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvalue condition matches the definitional quotient") {
    const TriToeplitz T{12, Complex(1), Complex(0.1), Complex(0.25)};
    for (Index h = 1; h <= T.n; ++h) {
        const Vector x = sp::right_eigenvector(T, h);
        const Vector y = sp::left_eigenvector(T, h);
        const double def = x.norm() * y.norm() / std::abs(y.dot(x));
        CHECK(cond::eig_condition(T, h) == doctest::Approx(def).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalue condition symmetry and scale invariance") {
    const TriToeplitz T{11, Complex(0.7, 0.2), Complex(1), Complex(2, -1)};
    const Complex c(0.31, -1.7);
    const TriToeplitz S{11, c * T.sigma, T.delta, c * T.tau};
    for (Index h = 1; h <= T.n; ++h) {
        const double k = cond::eig_condition(T, h);
        CHECK(std::abs(k - cond::eig_condition(T, T.n + 1 - h)) <= 1e-12 * k);
        CHECK(std::abs(k - cond::eig_condition(S, h)) <= 1e-12 * k);
    }
}

TEST_CASE("corner-case condition numbers") {
    const TriToeplitz T{9, Complex(4), Complex(-0.2), Complex(1)};
    CHECK(cond::eig_condition(T, ToeplitzTypeCase::PlusPlus, T.n) == 1.0);
    CHECK(cond::eig_condition(T, ToeplitzTypeCase::MinusMinus, 1) == 1.0);

    const TriToeplitz N{9, std::polar(2.0, 1.1), Complex(0.4), std::polar(2.0, -0.3)};
    for (ToeplitzTypeCase c : kAllTypeCases)
        for (Index h = 1; h <= N.n; ++h)
            CHECK(cond::eig_condition(N, c, h) == doctest::Approx(1.0).epsilon(1e-12));

    for (Index h = 1; h <= T.n; ++h) {
        const Vector x = sp::right_eigenvector(T, ToeplitzTypeCase::ZeroPlus, h);
        const Vector y = sp::left_eigenvector(T, ToeplitzTypeCase::ZeroPlus, h);
        const double def = x.norm() * y.norm() / std::abs(y.dot(x));
        CHECK(cond::eig_condition(T, ToeplitzTypeCase::ZeroPlus, h) ==
              doctest::Approx(def).epsilon(1e-10));
    }
}

TEST_CASE("normal eigenvector condition numbers") {
    const TriToeplitz T{100, std::polar(1.0, 0.25), Complex(0.7, -0.1),
                        std::polar(1.0, 1.9)};
    const double expect =
        1.0 / (4 * std::sin(M_PI / 202) * std::sin(3 * M_PI / 202));
    CHECK(cond::max_eigvec_condition(T) == doctest::Approx(expect).epsilon(1e-12));
    double best = 0.0;
    for (Index h = 1; h <= T.n; ++h)
        best = std::max(best, cond::eigvec_condition_normal(T, h));
    CHECK(best == doctest::Approx(expect).epsilon(1e-12));
    for (Index h : {1, 2, 99, 100})
        CHECK(cond::eigvec_condition_normal(T, h) ==
              doctest::Approx(expect).epsilon(1e-12));

    const TriToeplitz T2{2, Complex(0, 1.5), Complex(0), Complex(0, -1.5)};
    CHECK(cond::eigvec_condition_normal(T2, 1) ==
          doctest::Approx(1.0 / (2 * 1.5)).epsilon(1e-13));

    const TriToeplitz T3{12, Complex(2), Complex(0), Complex(2)};
    CHECK(cond::max_eigvec_condition(T3, ToeplitzTypeCase::PlusPlus) ==
          doctest::Approx(1.0 / (4 * 2 * std::pow(std::sin(M_PI / 24), 2)))
              .epsilon(1e-12));

    CHECK_THROWS_AS(cond::eigvec_condition_normal({5, Complex(1), Complex(0), Complex(0.01)}, 1),
                    NotNormal);
}

TEST_CASE("general eigenvector condition on a diagonal fixture") {
    Matrix A = Matrix::Zero(2, 2);
    A(1, 1) = Complex(3);
    Vector x(2);
    x << Complex(1), Complex(0);
    // deflated operator is (-3), so the condition number is 1/3
    CHECK(cond::eigvec_condition_general(A, Complex(0), x) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));

    // a repeated eigenvalue is rejected: Range(A - mu I) collapses
    Vector e(3);
    e << Complex(1), Complex(0), Complex(0);
    CHECK_THROWS_AS(cond::eigvec_condition_general(Matrix::Identity(3, 3), Complex(1), e),
                    RankDeficient);
}

TEST_CASE("condition-number overflow and structure guards") {
    const TriToeplitz wide{60, Complex(1e8), Complex(0), Complex(1e-8)};
    CHECK_THROWS_AS(cond::eig_condition(wide, 1), ScaleOverflow);
    const TriToeplitz skewish{6, Complex(1), Complex(0), Complex(-1)};
    CHECK_THROWS_AS(cond::rayleigh_bounds_hermitian(skewish, Vector::Ones(6), 1),
                    NotHermitian);
}

TEST_CASE("general eigenvector condition agrees with the gap rule when normal") {
    lab::Rng rng(61);
    const TriToeplitz T = oracles::random_normal_member(rng, 9);
    const Matrix A = T.dense();
    const Vector lam = sp::eigenvalues(T);
    for (Index h = 1; h <= T.n; ++h) {
        const Vector x = unit(sp::right_eigenvector(T, h));
        const double kg = cond::eigvec_condition_general(A, lam(h - 1), x);
        const double kn = cond::eigvec_condition_normal(T, h);
        CHECK(std::abs(kg - kn) <= 1e-8 * kn);
    }
}

TEST_CASE("general eigenvector condition on a far-from-normal member") {
    const TriToeplitz T{10, Complex(1), Complex(0), Complex(0.01)};
    const Matrix A = T.dense();
    const Vector lam = sp::eigenvalues(T);
    std::vector<double> kappa(10);
    for (Index h = 1; h <= 10; ++h) {
        const Vector x = unit(sp::right_eigenvector(T, h));
        kappa[static_cast<size_t>(h - 1)] =
            cond::eigvec_condition_general(A, lam(h - 1), x);
        CHECK(kappa[static_cast<size_t>(h - 1)] > 0.0);
        CHECK(std::isfinite(kappa[static_cast<size_t>(h - 1)]));
    }
    // profile is symmetric in h and peaks at mid-spectrum for this member
    for (Index h = 0; h < 5; ++h)
        CHECK(kappa[static_cast<size_t>(h)] ==
              doctest::Approx(kappa[static_cast<size_t>(9 - h)]).epsilon(1e-6));
    CHECK(kappa[4] > kappa[0]);
    CHECK(kappa[4] > 1e6);  // far from normal: vectors are extremely sensitive

    // Monte-Carlo slope check: sin(theta)/eps stays below kappa (plus slack).
    lab::Rng rng(67);
    const double eps = 1e-9;
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix E = oracles::random_matrix(rng, 10, 10) / 10.0;
        const Matrix Ae = A + eps * (E / E.norm());
        const numeric::EigenDecomposition d = numeric::eigendecompose(Ae, 1e-9);
        for (Index h : {1, 5, 10}) {
            const Vector x = unit(sp::right_eigenvector(T, h));
            Index best = 0;
            for (Index j = 1; j < 10; ++j)
                if (std::abs(d.values(j) - lam(h - 1)) <
                    std::abs(d.values(best) - lam(h - 1)))
                    best = j;
            const double c = std::abs(x.dot(d.vectors.col(best)));
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - c * c));
            CHECK(sin_theta / eps <= kappa[static_cast<size_t>(h - 1)] * 1.05 + 1e-3);
        }
    }
}

TEST_CASE("Rayleigh-quotient bracket on exact and rotated eigenvectors") {
    const TriToeplitz T{12, std::polar(1.2, 0.8), Complex(0.3),
                        std::conj(std::polar(1.2, 0.8))};
    const Vector x5 = unit(sp::right_eigenvector(T, 5));
    const auto exact = cond::rayleigh_bounds_hermitian(T, x5, 5);
    CHECK(exact.residual < 1e-13);
    CHECK(exact.lower <= 1e-13);
    CHECK(exact.spread == doctest::Approx(2 * exact.spread_stated).epsilon(1e-12));

    const Vector x6 = unit(sp::right_eigenvector(T, 6));
    const double angle = 1e-3;
    const Vector x_eps = std::cos(angle) * x5 + std::sin(angle) * x6;
    const auto b = cond::rayleigh_bounds_hermitian(T, x_eps, 5);
    const double measured = std::sin(angle);
    CHECK(b.lower <= measured * (1 + 1e-9));
    CHECK(measured <= b.upper * (1 + 1e-9));
}

TEST_CASE("Rayleigh-quotient bracket under random Hermitian perturbations") {
    const TriToeplitz T{30, Complex(1), Complex(0), Complex(1)};
    const Matrix A = T.dense();
    lab::Rng rng(71);
    const double eps = 1e-5;
    for (int rep = 0; rep < 10; ++rep) {
        Matrix E = oracles::random_matrix(rng, 30, 30);
        E = (E + E.adjoint()).eval();  // keep the perturbed matrix Hermitian
        E /= E.norm();
        const numeric::EigenDecomposition d = numeric::eigendecompose(A + eps * E, 1e-9);
        const Vector lam = sp::eigenvalues(T);
        for (Index h : {1, 8, 15, 30}) {
            Index best = 0;
            for (Index j = 1; j < 30; ++j)
                if (std::abs(d.values(j) - lam(h - 1)) <
                    std::abs(d.values(best) - lam(h - 1)))
                    best = j;
            const Vector x_eps = d.vectors.col(best);
            const auto b = cond::rayleigh_bounds_hermitian(T, x_eps, h);
            const Vector x = unit(sp::right_eigenvector(T, h));
            const double c = std::abs(x.dot(x_eps));
            const double measured = std::sqrt(std::max(0.0, 1.0 - c * c));
            CHECK(b.lower <= measured * (1 + 1e-9) + 1e-14);
            CHECK(measured <= b.upper * (1 + 1e-9) + 1e-14);
        }
    }
}
