#include <doctest.h>

#include "oracles.hpp"
#include "tritospec/conditioning.hpp"
#include "tritospec/numeric.hpp"
#include "tritospec/spectra.hpp"
#include "tritospec/structured.hpp"

using namespace tritospec;
namespace st = tritospec::structured;
namespace sp = tritospec::spectra;
namespace cond = tritospec::conditioning;

TEST_CASE("Wilkinson perturbation basics") {
    {
        const TriToeplitz T{2, Complex(1), Complex(0), Complex(1)};
        const auto wp = st::wilkinson(T, 1);
        Matrix half(2, 2);
        half.setConstant(Complex(0.5));
        CHECK((wp.W - half).norm() < 1e-14);
    }
    {
        const TriToeplitz T{7, Complex(1.3), Complex(0.2), Complex(1.3)};
        const auto wp = st::wilkinson(T, 3);
        CHECK((wp.W - wp.W.transpose()).norm() < 1e-13);   // real symmetric
        CHECK(wp.W.imag().norm() < 1e-14);
    }
    lab::Rng rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const TriToeplitz T = oracles::random_member(rng, 8);
        const auto wp = st::wilkinson(T, 1 + static_cast<Index>(rng.uniform() * 8));
        CHECK(wp.W.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Wilkinson mass sits in the corner away from the couplings") {
    const TriToeplitz T{8, Complex(0.05), Complex(0), Complex(5)};  // |sigma/tau| << 1
    const auto wp = st::wilkinson(T, 1);
    Index bi = 0, bj = 0;
    double best = 0.0;
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j)
            if (std::abs(wp.W(i, j)) > best) {
                best = std::abs(wp.W(i, j));
                bi = i;
                bj = j;
            }
    CHECK(bi == 7);  // bottom-left corner
    CHECK(bj == 0);
}

TEST_CASE("projection entries for the symmetric Wilkinson perturbation") {
    const TriToeplitz T{9, Complex(0.8), Complex(-0.4), Complex(0.8)};
    const Index n = T.n;
    for (Index h = 1; h <= n; ++h) {
        const auto wp = st::wilkinson(T, h);
        const auto p = st::project_subspace(wp.W, st::Subspace::SymmetricToeplitz);
        const double expect_off =
            trig::cos_pi_ratio(h, n + 1) / static_cast<double>(n - 1);
        CHECK(p.sigma.real() == doctest::Approx(expect_off).epsilon(1e-11));
        CHECK(p.tau.real() == doctest::Approx(expect_off).epsilon(1e-11));
        CHECK(p.delta.real() ==
              doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-11));
        // and it coincides with the unrestricted projection entrywise
        const auto q = st::project_subspace(wp.W, st::Subspace::Toeplitz);
        CHECK(std::abs(p.sigma - q.sigma) < 1e-12);
        CHECK(std::abs(p.delta - q.delta) < 1e-12);
        CHECK(std::abs(p.tau - q.tau) < 1e-12);
    }
}

TEST_CASE("skew Wilkinson perturbation projects to I/n") {
    const TriToeplitz T{10, Complex(1.4), Complex(0.6), Complex(-1.4)};
    for (Index h : {1, 4, 10}) {
        const auto wp = st::wilkinson(T, h);
        const auto p = st::project_subspace(wp.W, st::Subspace::SkewToeplitz);
        CHECK(std::abs(p.delta - Complex(0.1)) < 1e-12);
        CHECK(std::abs(p.sigma) < 1e-12);
        CHECK(std::abs(p.tau) < 1e-12);
        CHECK(p.frobenius_norm ==
              doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-11));
    }
}

TEST_CASE("projection is the identity on members of the subspace") {
    Matrix W = Matrix::Zero(5, 5);
    for (Index i = 0; i < 5; ++i) {
        W(i, i) = Complex(2, 1);
        if (i + 1 < 5) {
            W(i + 1, i) = Complex(-1, 0.5);
            W(i, i + 1) = Complex(3);
        }
    }
    const auto p = st::project_subspace(W, st::Subspace::Toeplitz);
    CHECK(p.sigma == Complex(-1, 0.5));
    CHECK(p.delta == Complex(2, 1));
    CHECK(p.tau == Complex(3));
    CHECK((p.dense(5) - W).norm() == 0.0);
}

TEST_CASE("structured condition numbers, closed form vs projection route") {
    const TriToeplitz T{8, Complex(2), Complex(0.4), Complex(0.5)};
    for (Index h = 1; h <= T.n; ++h) {
        const auto wp = st::wilkinson(T, h);
        const auto p = st::project_subspace(wp.W, st::Subspace::Toeplitz);
        const double def = cond::eig_condition(T, h) * p.frobenius_norm;
        const double k = st::eig_condition(T, h, st::Subspace::Toeplitz);
        CHECK(k == doctest::Approx(def).epsilon(1e-10));
        CHECK(k <= cond::eig_condition(T, h) * (1 + 1e-12));
    }
}

TEST_CASE("structured condition number at equal moduli") {
    const TriToeplitz T{10, std::polar(1.0, 0.8), Complex(1), std::polar(1.0, -0.1)};
    for (Index h = 1; h <= T.n; ++h) {
        const double expect = std::sqrt(
            0.1 + (2.0 / 9.0) * std::pow(trig::cos_pi_ratio(h, 11), 2));
        CHECK(st::eig_condition(T, h, st::Subspace::Toeplitz) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("skew subspace condition number is 1/sqrt(n)") {
    const TriToeplitz T{16, Complex(3), Complex(0.2), Complex(-3)};
    for (Index h = 1; h <= T.n; ++h)
        CHECK(st::eig_condition(T, h, st::Subspace::SkewToeplitz) == doctest::Approx(0.25));
    CHECK_THROWS_AS(st::eig_condition(T, 1, st::Subspace::SymmetricToeplitz),
                    SubspaceMismatch);
}

TEST_CASE("structured condition depends only on h, n and the modulus ratio") {
    const TriToeplitz T{9, Complex(0.6, 1.1), Complex(0.2), Complex(-1.4, 0.2)};
    const Complex c(2.3, -0.7);
    const TriToeplitz S{9, c * T.sigma, Complex(0), c * T.tau};
    for (Index h = 1; h <= T.n; ++h) {
        const double a = st::eig_condition(T, h, st::Subspace::Toeplitz);
        CHECK(std::abs(a - st::eig_condition(S, h, st::Subspace::Toeplitz)) <= 1e-12 * a);
    }
}

TEST_CASE("worst-case structured perturbations") {
    const TriToeplitz T{9, Complex(1.1), Complex(0.3), Complex(1.1)};
    for (Index h = 1; h <= T.n; ++h) {
        const Matrix W = st::worst_case_perturbation(T, h, st::Subspace::SymmetricToeplitz);
        CHECK(W.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const double kappa = st::eig_condition(T, h, st::Subspace::SymmetricToeplitz);
        const double expect_diag = (1.0 / 9.0) / kappa;
        CHECK(W(0, 0).real() == doctest::Approx(expect_diag).epsilon(1e-10));
    }
    const TriToeplitz S{9, Complex(2), Complex(0.3), Complex(-2)};
    const Matrix W = st::worst_case_perturbation(S, 4, st::Subspace::SkewToeplitz);
    CHECK((W - Matrix::Identity(9, 9) / 3.0).norm() < 1e-12);
}

TEST_CASE("first-order drift rates") {
    const TriToeplitz T{8, Complex(1.6), Complex(0.1), Complex(0.4)};
    lab::Rng rng(9);
    for (Index h = 1; h <= T.n; ++h) {
        const double kappa_t = st::eig_condition(T, h, st::Subspace::Toeplitz);
        const Matrix W = st::worst_case_perturbation(T, h, st::Subspace::Toeplitz);
        CHECK(st::eig_drift_first_order(T, h, W) ==
              doctest::Approx(kappa_t).epsilon(1e-12));

        // direction orthogonal to the projected Wilkinson perturbation
        const auto wp = st::wilkinson(T, h);
        const auto p = st::project_subspace(wp.W, st::Subspace::Toeplitz);
        Matrix O = Matrix::Zero(T.n, T.n);
        for (Index i = 0; i + 1 < T.n; ++i) {
            O(i + 1, i) = std::conj(p.tau);   // swap bands: Frobenius-orthogonal
            O(i, i + 1) = -std::conj(p.sigma);
        }
        if (O.norm() > 0) {
            O /= O.norm();
            CHECK(st::eig_drift_first_order(T, h, O) < 1e-12);
        }

        for (int rep = 0; rep < 40; ++rep) {
            const auto s = lab::sample_perturbation(T.n, lab::SampleSpace::Toeplitz,
                                                    rng.uniform() * 1e9);
            CHECK(st::eig_drift_first_order(T, h, s.E) <= kappa_t * (1 + 1e-9));
        }
    }
}

TEST_CASE("finite differences track the structured condition number") {
    const TriToeplitz T{10, Complex(1.3), Complex(0.2), Complex(0.8)};
    for (Index h : {1, 3, 6, 10}) {
        const Matrix W = st::worst_case_perturbation(T, h, st::Subspace::Toeplitz);
        const double kappa_t = st::eig_condition(T, h, st::Subspace::Toeplitz);
        const double slope = lab::fd_eigenvalue_slope(T, W, h, 1e-6);
        CHECK(slope == doctest::Approx(kappa_t).epsilon(0.05));
    }
}

TEST_CASE("symmetric pseudoeigenvalues") {
    const TriToeplitz T{12, Complex(1.2), Complex(0.4), Complex(1.2)};
    const Vector lam = sp::eigenvalues(T);
    for (Index j : {1, 5, 12}) {
        CHECK(st::pseudoeigenvalue_symmetric(T, j, +1, 0.0) ==
              doctest::Approx(lam(j - 1).real()).epsilon(1e-13));
        const double eps = 1e-3;
        const double width = st::pseudoeigenvalue_symmetric(T, j, +1, eps) -
                             st::pseudoeigenvalue_symmetric(T, j, -1, eps);
        const double kappa = st::eig_condition(T, j, st::Subspace::SymmetricToeplitz);
        CHECK(width == doctest::Approx(2 * kappa * eps).epsilon(1e-10));

        // dense-solver agreement to second order in eps
        const double tiny = 1e-6;
        const Matrix W = st::worst_case_perturbation(T, j, st::Subspace::SymmetricToeplitz);
        const Vector vals = numeric::qr_eigenvalues(T.dense() + tiny * W);
        double best = 1e300;
        const double predicted = st::pseudoeigenvalue_symmetric(T, j, +1, tiny);
        for (Index i = 0; i < vals.size(); ++i)
            best = std::min(best, std::abs(vals(i) - Complex(predicted)));
        CHECK(best < 50 * tiny * tiny + 1e-12);
    }
}

TEST_CASE("skew pseudoeigenvalues") {
    const TriToeplitz T{9, Complex(-1.7), Complex(0.3), Complex(1.7)};
    for (Index h : {1, 4, 9}) {
        const Complex base = st::pseudoeigenvalue_skew(T, h, +1, 0.0);
        CHECK(base.real() == doctest::Approx(0.3).epsilon(1e-13));
        CHECK(base.imag() ==
              doctest::Approx(2 * 1.7 * trig::cos_pi_ratio(h, 10)).epsilon(1e-13));
        const double eps = 1e-3;
        CHECK(st::pseudoeigenvalue_skew(T, h, +1, eps).real() - base.real() ==
              doctest::Approx(eps / 3.0).epsilon(1e-12));

        const double tiny = 1e-6;
        const Matrix W = st::worst_case_perturbation(T, h, st::Subspace::SkewToeplitz);
        const Vector vals = numeric::qr_eigenvalues(T.dense() + tiny * W);
        double best = 1e300;
        const Complex predicted = st::pseudoeigenvalue_skew(T, h, +1, tiny);
        for (Index i = 0; i < vals.size(); ++i)
            best = std::min(best, std::abs(vals(i) - predicted));
        CHECK(best < 50 * tiny * tiny + 1e-12);
    }
}

TEST_CASE("structured pseudospectrum boundaries") {
    const TriToeplitz T{8, Complex(1.1), Complex(0.2), Complex(1.1)};
    const double eps = 1e-4;
    const auto b = st::structured_pseudospectrum(T, eps, st::PseudospectrumKind::Hermitian);
    REQUIRE(b.segments.size() == 8);
    for (Index h = 1; h <= 8; ++h) {
        const auto& s = b.segments[static_cast<size_t>(h - 1)];
        CHECK(s[0].real() <= s[1].real());
        const double kappa = st::eig_condition(T, h, st::Subspace::SymmetricToeplitz);
        CHECK(s[1].real() - s[0].real() ==
              doctest::Approx(2 * kappa * eps).epsilon(1e-9));
    }

    const TriToeplitz K{8, Complex(1.1), Complex(0.2), Complex(-1.1)};
    const auto bs = st::structured_pseudospectrum(K, eps, st::PseudospectrumKind::Skew);
    REQUIRE(bs.segments.size() == 8);
    for (const auto& s : bs.segments)
        CHECK(s[1].real() - s[0].real() ==
              doctest::Approx(2 * eps / std::sqrt(8.0)).epsilon(1e-9));

    // degenerate ellipse for a real symmetric member: the real segment
    const auto be = st::structured_pseudospectrum(T, 0.0, st::PseudospectrumKind::Ellipse, 64);
    REQUIRE(be.ellipse.size() == 64);
    for (const auto& p : be.ellipse) {
        CHECK(p.imag() == 0.0);
        CHECK(p.real() >= 0.2 - 2 * 1.1 - 1e-12);
        CHECK(p.real() <= 0.2 + 2 * 1.1 + 1e-12);
    }
    // every sample comes from a unit-modulus preimage by construction
    const TriToeplitz G{6, Complex(0.4, 1.2), Complex(0.1, -2), Complex(2, 0.3)};
    const auto bg = st::structured_pseudospectrum(G, 0.0, st::PseudospectrumKind::Ellipse, 32);
    for (int j = 0; j < 32; ++j) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * j / 32);
        const Complex expect = G.tau * z + G.delta + G.sigma * std::conj(z);
        CHECK(std::abs(bg.ellipse[static_cast<size_t>(j)] - expect) == 0.0);
    }
}

TEST_CASE("eigenvector overlap under structured perturbations") {
    const TriToeplitz T{10, std::polar(1.0, 0.3), Complex(0.5), std::polar(1.0, -0.4)};
    // same coupling ratio: eigenvectors unchanged
    const TriToeplitz same{10, 2.0 * T.sigma, Complex(-1), 2.0 * T.tau};
    for (Index h = 1; h <= T.n; ++h)
        CHECK(st::cos_theta_structured(T, same, h) >= 1.0 - 1e-12);

    const TriToeplitz S{10, Complex(1.2), Complex(0), Complex(1.2)};
    const TriToeplitz Se{10, Complex(1.25), Complex(0.2), Complex(1.25)};
    for (Index h = 1; h <= 10; ++h)
        CHECK(st::cos_theta_structured(S, Se, h) >= 1.0 - 1e-12);

    const TriToeplitz K{10, Complex(1.2), Complex(0), Complex(-1.2)};
    const TriToeplitz Ke{10, Complex(1.3), Complex(0.1), Complex(-1.3)};
    for (Index h = 1; h <= 10; ++h)
        CHECK(st::cos_theta_structured(K, Ke, h) >= 1.0 - 1e-12);

    // a ratio change does move the eigenvectors
    const TriToeplitz Ne{10, Complex(1.5), Complex(0), Complex(0.9)};
    CHECK(st::cos_theta_structured(S, Ne, 1) < 1.0 - 1e-6);
}

TEST_CASE("overlap formula agrees with the measured inner product") {
    lab::Rng rng(19);
    const TriToeplitz T = oracles::random_normal_member(rng, 9);
    for (int rep = 0; rep < 10; ++rep) {
        const TriToeplitz Te{9, oracles::random_modulus(rng, 0.5, 2.0),
                             oracles::random_modulus(rng, 0.0, 1.0),
                             oracles::random_modulus(rng, 0.5, 2.0)};
        for (Index h = 1; h <= 9; ++h) {
            const Vector x = unit(sp::right_eigenvector(T, h));
            const Vector xe = unit(sp::right_eigenvector(Te, h));
            const double direct = std::abs(x.dot(xe));
            CHECK(st::cos_theta_structured(T, Te, h) ==
                  doctest::Approx(direct).epsilon(1e-11));
        }
    }
}

TEST_CASE("Hermitian structured Rayleigh quotient") {
    const TriToeplitz T{14, std::polar(1.4, 0.6), Complex(0.2),
                        std::conj(std::polar(1.4, 0.6))};
    {
        const auto r = st::hermitian_structured_rayleigh(T, T.sigma, 4);
        CHECK(r.lambda_tilde ==
              doctest::Approx(0.2 + 2 * 1.4 * trig::cos_pi_ratio(4, 15)).epsilon(1e-12));
        CHECK(r.residual < 1e-12);
        CHECK(r.lower <= 1e-13);
    }
    {
        const Complex rotated = T.sigma * std::polar(1.0, M_PI / 2);
        const auto r = st::hermitian_structured_rayleigh(T, rotated, 4);
        CHECK(r.lambda_tilde == doctest::Approx(0.2).epsilon(1e-12));
    }
    lab::Rng rng(77);
    for (int rep = 0; rep < 50; ++rep) {
        const Index h = 1 + static_cast<Index>(rng.uniform() * 14);
        const double darg = (rng.uniform() - 0.5) * 0.06;
        const double dmod = 1.0 + (rng.uniform() - 0.5) * 0.2;
        const Complex sigma_eps = T.sigma * std::polar(dmod, darg);
        const auto r = st::hermitian_structured_rayleigh(T, sigma_eps, h);

        // measured angle between the closed-form eigenvectors
        const Vector x = unit(sp::right_eigenvector(T, h));
        const TriToeplitz Te{14, sigma_eps, Complex(0.2), std::conj(sigma_eps)};
        const Vector xe = unit(sp::right_eigenvector(Te, h));
        const double c = std::abs(x.dot(xe));
        const double measured = std::sqrt(std::max(0.0, 1.0 - c * c));
        CHECK(r.lower <= measured * (1 + 1e-9) + 1e-14);
        CHECK(measured <= r.upper * (1 + 1e-9) + 1e-14);
    }
}
