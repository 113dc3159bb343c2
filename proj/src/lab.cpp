#include "tritospec/lab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "tritospec/conditioning.hpp"
#include "tritospec/spectra.hpp"

namespace tritospec::lab {

namespace {

constexpr double kOverlapFloor = 0.70710678118654752440;  // 1/sqrt(2)

Matrix band_matrix(Index n, Complex sub, Complex diag, Complex sup) {
    Matrix E = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        E(i, i) = diag;
        if (i + 1 < n) {
            E(i + 1, i) = sub;
            E(i, i + 1) = sup;
        }
    }
    return E;
}

// Exact eigendecomposition of the family member from the closed forms.
numeric::EigenDecomposition closed_form_decomposition(const TriToeplitz& T) {
    numeric::EigenDecomposition F;
    F.values = spectra::eigenvalues(T);
    F.vectors.resize(T.n, T.n);
    for (Index h = 1; h <= T.n; ++h)
        F.vectors.col(h - 1) = unit(spectra::right_eigenvector(T, h));
    return F;
}

numeric::EigenDecomposition closed_form_decomposition(const TriToeplitz& T,
                                                      ToeplitzTypeCase c) {
    numeric::EigenDecomposition F;
    F.values = spectra::eigenvalues(T, c);
    F.vectors.resize(T.n, T.n);
    for (Index h = 1; h <= T.n; ++h)
        F.vectors.col(h - 1) = unit(spectra::right_eigenvector(T, c, h));
    return F;
}

std::vector<double> eigvec_kappas(const TriToeplitz& T, const Matrix& dense) {
    std::vector<double> kap(static_cast<size_t>(T.n));
    if (spectra::is_normal(T)) {
        for (Index h = 1; h <= T.n; ++h)
            kap[static_cast<size_t>(h - 1)] = conditioning::eigvec_condition_normal(T, h);
    } else {
        const Vector lam = spectra::eigenvalues(T);
        for (Index h = 1; h <= T.n; ++h) {
            const Vector x = unit(spectra::right_eigenvector(T, h));
            kap[static_cast<size_t>(h - 1)] =
                conditioning::eigvec_condition_general(dense, lam(h - 1), x);
        }
    }
    return kap;
}

std::vector<double> eigvec_kappas(const TriToeplitz& T, ToeplitzTypeCase c,
                                  const Matrix& dense) {
    std::vector<double> kap(static_cast<size_t>(T.n));
    if (spectra::is_normal(T, c)) {
        for (Index h = 1; h <= T.n; ++h)
            kap[static_cast<size_t>(h - 1)] =
                conditioning::eigvec_condition_normal(T, c, h);
    } else {
        const Vector lam = spectra::eigenvalues(T, c);
        for (Index h = 1; h <= T.n; ++h) {
            const Vector x = unit(spectra::right_eigenvector(T, c, h));
            kap[static_cast<size_t>(h - 1)] =
                conditioning::eigvec_condition_general(dense, lam(h - 1), x);
        }
    }
    return kap;
}

std::vector<BoundCheck> verify_core(const numeric::EigenDecomposition& exact,
                                    const std::vector<double>& kappas,
                                    const Matrix& dense, const Matrix& E,
                                    double eps) {
    const Index n = dense.rows();
    std::vector<BoundCheck> out;
    out.reserve(static_cast<size_t>(n));
    if (eps == 0.0) {
        // The continuation at eps = 0 is the eigenvector itself.
        for (Index h = 1; h <= n; ++h)
            out.push_back({h, 0.0, 0.0, true});
        return out;
    }
    const numeric::EigenDecomposition F_eps =
        numeric::eigendecompose(dense + eps * E, 1e-9, 0);
    const std::vector<Index> pair = match_continuation(exact, F_eps);
    for (Index h = 1; h <= n; ++h) {
        const Vector& x = exact.vectors.col(h - 1);
        const Vector v = F_eps.vectors.col(pair[h - 1]);
        // sin(theta) through the phase-aligned difference: with c = |x^H v|,
        // ||x - v e^{-i arg(x^H v)}||^2 = 2(1 - c), so
        // sin^2 = (1-c)(1+c) = d^2 (1+c)/2. This stays accurate well below
        // the sqrt(eps) floor of sqrt(1 - c^2).
        const Complex overlap = x.dot(v);
        const double c = std::min(1.0, std::abs(overlap));
        const Complex phase =
            overlap == Complex(0) ? Complex(1) : overlap / std::abs(overlap);
        const double d = (x - v / phase).stableNorm();
        const double s = d * std::sqrt((1.0 + c) / 2.0);
        const double bound = kappas[static_cast<size_t>(h - 1)] * eps;
        out.push_back({h, s, bound, s <= bound * (1.0 + 1e-9)});
    }
    return out;
}

}  // namespace

const char* sample_space_name(SampleSpace s) {
    switch (s) {
        case SampleSpace::General: return "general";
        case SampleSpace::Toeplitz: return "T";
        case SampleSpace::SymmetricToeplitz: return "ST";
        case SampleSpace::SkewToeplitz: return "AT";
    }
    return "?";
}

SampleSpace sample_space_from_name(const std::string& name) {
    if (name == "general") return SampleSpace::General;
    if (name == "T") return SampleSpace::Toeplitz;
    if (name == "ST") return SampleSpace::SymmetricToeplitz;
    if (name == "AT") return SampleSpace::SkewToeplitz;
    throw std::invalid_argument("unknown perturbation subspace \"" + name + "\"");
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

PerturbationSample sample_perturbation(Index n, SampleSpace s, std::uint64_t seed) {
    assert(n >= 1);
    Rng rng(seed);
    Matrix E;
    switch (s) {
        case SampleSpace::General:
            E.resize(n, n);
            for (Index j = 0; j < n; ++j)
                for (Index i = 0; i < n; ++i) E(i, j) = rng.cgaussian();
            break;
        case SampleSpace::Toeplitz:
            E = band_matrix(n, rng.cgaussian(), rng.cgaussian(), rng.cgaussian());
            break;
        case SampleSpace::SymmetricToeplitz: {
            const double d = rng.gaussian(), o = rng.gaussian();
            E = band_matrix(n, Complex(o), Complex(d), Complex(o));
            break;
        }
        case SampleSpace::SkewToeplitz: {
            const double d = rng.gaussian(), o = rng.gaussian();
            E = band_matrix(n, Complex(o), Complex(d), Complex(-o));
            break;
        }
    }
    const double f = E.norm();
    if (f == 0.0) {
        E = Matrix::Zero(n, n);
        E(0, 0) = Complex(1);
    } else {
        E /= f;
    }
    return {E, s, seed};
}

std::vector<Index> match_continuation(const numeric::EigenDecomposition& F,
                                      const numeric::EigenDecomposition& F_eps) {
    const Index n = F.vectors.cols();
    if (F_eps.vectors.cols() != n || F.vectors.rows() != F_eps.vectors.rows())
        throw LengthMismatch("match_continuation: decomposition sizes differ");
    RealMatrix overlap(n, n);
    for (Index h = 0; h < n; ++h)
        for (Index j = 0; j < n; ++j)
            overlap(h, j) = std::abs(F.vectors.col(h).dot(F_eps.vectors.col(j)));

    std::vector<Index> pair(static_cast<size_t>(n), -1);
    std::vector<bool> row_used(static_cast<size_t>(n), false);
    std::vector<bool> col_used(static_cast<size_t>(n), false);
    for (Index step = 0; step < n; ++step) {
        double best = -1.0;
        Index bh = -1, bj = -1;
        for (Index h = 0; h < n; ++h) {
            if (row_used[static_cast<size_t>(h)]) continue;
            for (Index j = 0; j < n; ++j) {
                if (col_used[static_cast<size_t>(j)]) continue;
                if (overlap(h, j) > best) {
                    best = overlap(h, j);
                    bh = h;
                    bj = j;
                }
            }
        }
        if (best < kOverlapFloor)
            throw AmbiguousMatch("best remaining overlap below 1/sqrt(2); perturbation too large to track");
        pair[static_cast<size_t>(bh)] = bj;
        row_used[static_cast<size_t>(bh)] = true;
        col_used[static_cast<size_t>(bj)] = true;
    }
    return pair;
}

std::vector<BoundCheck> verify_sin_theta_all(const TriToeplitz& T, const Matrix& E,
                                             double eps) {
    const Matrix dense = T.dense();
    return verify_core(closed_form_decomposition(T), eigvec_kappas(T, dense), dense,
                       E, eps);
}

std::vector<BoundCheck> verify_sin_theta_all(const TriToeplitz& T,
                                             ToeplitzTypeCase c, const Matrix& E,
                                             double eps) {
    const Matrix dense = spectra::make_type(T, c).dense();
    return verify_core(closed_form_decomposition(T, c), eigvec_kappas(T, c, dense),
                       dense, E, eps);
}

BoundCheck verify_sin_theta(const TriToeplitz& T, const Matrix& E, double eps,
                            Index h) {
    return verify_sin_theta_all(T, E, eps)[static_cast<size_t>(h - 1)];
}

BoundCheck verify_sin_theta(const TriToeplitz& T, ToeplitzTypeCase c,
                            const Matrix& E, double eps, Index h) {
    return verify_sin_theta_all(T, c, E, eps)[static_cast<size_t>(h - 1)];
}

double fd_eigenvalue_slope(const TriToeplitz& T, const Matrix& E, Index h, double t) {
    assert(t > 0.0 && h >= 1 && h <= T.n);
    const Complex lam0 = spectra::eigenvalues(T)(h - 1);
    const Vector vals = numeric::qr_eigenvalues(T.dense() + t * E);
    Index best = 0;
    for (Index j = 1; j < vals.size(); ++j)
        if (std::abs(vals(j) - lam0) < std::abs(vals(best) - lam0)) best = j;
    return std::abs(vals(best) - lam0) / t;
}

double fd_eigenvalue_slope(const TriToeplitz& T, const Matrix& E, Index h) {
    return fd_eigenvalue_slope(T, E, h, 1e-6 * T.frobenius_norm());
}

}  // namespace tritospec::lab
