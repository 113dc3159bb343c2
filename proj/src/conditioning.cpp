#include "tritospec/conditioning.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "tritospec/numeric.hpp"
#include "tritospec/spectra.hpp"

namespace tritospec::conditioning {

namespace {

using trig::cos_pi_ratio;
using trig::sin_pi_ratio;

double offdiag_scale(const TriToeplitz& T) {
    return std::sqrt(std::abs(T.sigma * T.tau));
}

void require_coupled(const TriToeplitz& T, const char* who) {
    if (!T.coupled())
        throw DegenerateCase(std::string(who) + " requires sigma*tau != 0");
}

// Gap formulas share one shape: 4 sqrt|sigma tau| sin(pi/den) sin(num pi/den)
// where num switches between two adjacent-neighbor branches as h crosses the
// middle of the spectrum.
struct GapForm {
    long long den;
    long long num_a, num_b;  // branch A: toward h-1; branch B: toward h+1
    Index threshold;         // branch A for 1 < h <= threshold or h == n
};

double eval_gap(const TriToeplitz& T, const GapForm& f, Index h) {
    const bool branch_a = (h > 1 && h <= f.threshold) || h == T.n;
    const long long num = branch_a ? f.num_a : f.num_b;
    return 4.0 * offdiag_scale(T) * sin_pi_ratio(1, f.den) * sin_pi_ratio(num, f.den);
}

double power_ratio(const TriToeplitz& T, const char* who) {
    const double rho = std::abs(T.sigma) / std::abs(T.tau);
    if (static_cast<double>(T.n) * std::abs(std::log(rho)) > 700.0)
        throw ScaleOverflow(std::string(who) + ": |sigma/tau|^n exceeds double range");
    return rho;
}

// kappa = pref * sqrt(sum rho^k f_k^2) * sqrt(sum rho^-k f_k^2) for the
// trigonometric factor f of the family member.
template <typename Factor>
double kappa_from_sums(Index n, double rho, double pref, Factor f) {
    double sx = 0.0, sy = 0.0;
    double up = 1.0, down = 1.0;
    for (Index k = 1; k <= n; ++k) {
        up *= rho;
        down /= rho;
        const double fk = f(k);
        sx += up * fk * fk;
        sy += down * fk * fk;
    }
    return pref * std::sqrt(sx) * std::sqrt(sy);
}

}  // namespace

double min_gap(const TriToeplitz& T, Index h) {
    require_coupled(T, "min_gap");
    if (T.n < 2)
        throw DegenerateCase("min_gap needs at least two eigenvalues");
    assert(h >= 1 && h <= T.n);
    const GapForm f{2 * (T.n + 1), 2 * h - 1, 2 * h + 1, T.n / 2};
    const double g = eval_gap(T, f, h);
#ifndef NDEBUG
    {  // both branches must agree with the smaller adjacent gap
        const Vector lam = spectra::eigenvalues(T);
        double adj = std::numeric_limits<double>::infinity();
        if (h > 1) adj = std::min(adj, std::abs(lam(h - 1) - lam(h - 2)));
        if (h < T.n) adj = std::min(adj, std::abs(lam(h - 1) - lam(h)));
        assert(std::abs(g - adj) <= 1e-9 * std::max(1.0, adj));
    }
#endif
    return g;
}

double min_gap(const TriToeplitz& T, ToeplitzTypeCase c, Index h) {
    require_coupled(T, "min_gap");
    if (T.n < 2)
        throw DegenerateCase("min_gap needs at least two eigenvalues");
    assert(h >= 1 && h <= T.n);
    const Index n = T.n;
    GapForm f{};
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::PlusZero:
            f = {2 * n + 1, 2 * h - 1, 2 * h + 1, n / 2};
            break;
        case ToeplitzTypeCase::ZeroMinus:
        case ToeplitzTypeCase::MinusZero:
            f = {2 * n + 1, 2 * (h - 1), 2 * h, (n + 1) / 2};
            break;
        case ToeplitzTypeCase::PlusMinus:
        case ToeplitzTypeCase::MinusPlus:
            f = {2 * n, 2 * (h - 1), 2 * h, n / 2};
            break;
        case ToeplitzTypeCase::PlusPlus:
            f = {2 * n, 2 * h - 1, 2 * h + 1, n / 2};
            break;
        case ToeplitzTypeCase::MinusMinus:
            f = {2 * n, 2 * h - 3, 2 * h - 1, (n + 1) / 2};
            break;
    }
    return eval_gap(T, f, h);
}

double global_min_gap(const TriToeplitz& T) {
    require_coupled(T, "global_min_gap");
    const long long den = 2 * (T.n + 1);
    return 4.0 * offdiag_scale(T) * sin_pi_ratio(1, den) * sin_pi_ratio(3, den);
}

double global_min_gap(const TriToeplitz& T, ToeplitzTypeCase c) {
    require_coupled(T, "global_min_gap");
    const Index n = T.n;
    const double s = 4.0 * offdiag_scale(T);
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::PlusZero:
        case ToeplitzTypeCase::ZeroMinus:
        case ToeplitzTypeCase::MinusZero:
            return s * sin_pi_ratio(1, 2 * n + 1) * sin_pi_ratio(2, 2 * n + 1);
        case ToeplitzTypeCase::PlusMinus:
        case ToeplitzTypeCase::MinusPlus:
            return s * sin_pi_ratio(1, 2 * n) * sin_pi_ratio(2, 2 * n);
        case ToeplitzTypeCase::PlusPlus:
        case ToeplitzTypeCase::MinusMinus: {
            const double w = sin_pi_ratio(1, 2 * n);
            return s * w * w;
        }
    }
    return 0.0;
}

double eig_condition(const TriToeplitz& T, Index h) {
    require_coupled(T, "eig_condition");
    assert(h >= 1 && h <= T.n);
    const double rho = power_ratio(T, "eig_condition");
    const Index n = T.n;
    return kappa_from_sums(n, rho, 2.0 / static_cast<double>(n + 1),
                           [&](Index k) { return sin_pi_ratio(h * k, n + 1); });
}

double eig_condition(const TriToeplitz& T, ToeplitzTypeCase c, Index h) {
    require_coupled(T, "eig_condition");
    assert(h >= 1 && h <= T.n);
    const Index n = T.n;
    // The corner modifications +/+ and -/- have one eigenvector with equal
    // component moduli; those indices are tabulated as perfectly conditioned.
    if ((c == ToeplitzTypeCase::PlusPlus && h == n) ||
        (c == ToeplitzTypeCase::MinusMinus && h == 1))
        return 1.0;
    const double rho = power_ratio(T, "eig_condition");
    double pref;
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::PlusZero:
        case ToeplitzTypeCase::ZeroMinus:
        case ToeplitzTypeCase::MinusZero:
            pref = 4.0 / static_cast<double>(2 * n + 1);
            break;
        default:
            pref = 2.0 / static_cast<double>(n);
            break;
    }
    return kappa_from_sums(n, rho, pref, [&](Index k) {
        return spectra::type_vector_factor(c, n, h, k);
    });
}

double eigvec_condition_normal(const TriToeplitz& T, Index h) {
    if (!spectra::is_normal(T))
        throw NotNormal("eigvec_condition_normal requires |sigma| == |tau|");
    return 1.0 / min_gap(T, h);
}

double eigvec_condition_normal(const TriToeplitz& T, ToeplitzTypeCase c, Index h) {
    if (!spectra::is_normal(T, c))
        throw NotNormal("eigvec_condition_normal requires |sigma| == |tau|");
    return 1.0 / min_gap(T, c, h);
}

double max_eigvec_condition(const TriToeplitz& T) {
    if (!spectra::is_normal(T))
        throw NotNormal("max_eigvec_condition requires |sigma| == |tau|");
    return 1.0 / global_min_gap(T);
}

double max_eigvec_condition(const TriToeplitz& T, ToeplitzTypeCase c) {
    if (!spectra::is_normal(T, c))
        throw NotNormal("max_eigvec_condition requires |sigma| == |tau|");
    return 1.0 / global_min_gap(T, c);
}

double eigvec_condition_general(const Matrix& A, Complex mu, const Vector& x) {
    const Index n = A.rows();
    if (A.cols() != n) throw LengthMismatch("eigvec_condition_general: square matrix expected");
    if (x.size() != n) throw LengthMismatch("eigvec_condition_general: eigenvector length mismatch");
    if (n == 1) return 0.0;
    const Matrix B = A - mu * Matrix::Identity(n, n);
    const numeric::PivotedQR qr = numeric::householder_qr_pivoted(B, 1e-12);
    if (qr.rank < n - 1)
        throw RankDeficient("mu is not a simple eigenvalue at working precision");
    const Matrix U = qr.Q.leftCols(n - 1);
    const Matrix M = mu * Matrix::Identity(n - 1, n - 1) - U.adjoint() * A * U;
    const double smin = numeric::smallest_singular_value(M);
    if (smin == 0.0)
        throw RankDeficient("deflated operator is singular at mu");
    return 1.0 / smin;
}

RayleighBounds rayleigh_bounds_hermitian(const TriToeplitz& T, const Vector& x_eps,
                                         Index h) {
    if (!is_hermitian(T))
        throw NotHermitian("rayleigh_bounds_hermitian requires tau = conj(sigma), real delta");
    require_coupled(T, "rayleigh_bounds_hermitian");
    assert(h >= 1 && h <= T.n && T.n >= 2);
    if (x_eps.size() != T.n)
        throw LengthMismatch("pseudoeigenvector length mismatch");

    const TridiagonalMatrix A(T);
    const Vector Tx = A.apply(x_eps);
    RayleighBounds out;
    out.rayleigh = x_eps.dot(Tx).real();
    out.residual = (Tx - Complex(out.rayleigh) * x_eps).stableNorm();

    const double as = std::abs(T.sigma);
    Vector lam(T.n);
    for (Index k = 1; k <= T.n; ++k)
        lam(k - 1) = T.delta.real() + 2.0 * as * cos_pi_ratio(k, T.n + 1);
    double lo = lam(0).real(), hi = lam(0).real();
    double gap = std::numeric_limits<double>::infinity();
    for (Index k = 1; k <= T.n; ++k) {
        lo = std::min(lo, lam(k - 1).real());
        hi = std::max(hi, lam(k - 1).real());
        if (k != h) gap = std::min(gap, std::abs(lam(k - 1).real() - out.rayleigh));
    }
    out.spread = hi - lo;
    out.spread_stated = 2.0 * as * cos_pi_ratio(1, T.n + 1);
    out.lower = out.spread > 0.0 ? out.residual / out.spread : 0.0;
    out.upper = gap > 0.0 ? out.residual / gap
                          : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace tritospec::conditioning
