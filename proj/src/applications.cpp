#include "tritospec/applications.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "tritospec/numeric.hpp"

namespace tritospec::apps {

namespace {

using trig::cos_pi_ratio;

std::vector<Complex> sorted_desc(const Vector& v) {
    std::vector<Complex> s(v.data(), v.data() + v.size());
    std::sort(s.begin(), s.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return s;
}

std::vector<double> sorted_real_desc(const Vector& v) {
    std::vector<double> s(static_cast<size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) s[static_cast<size_t>(i)] = v(i).real();
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
}

void require_real_symmetric(const TridiagonalMatrix& A, const char* who) {
    if (!A.is_real_symmetric())
        throw NotSymmetric(std::string(who) + " requires a real symmetric matrix");
}

}  // namespace

TriToeplitz nearest_toeplitz(const TridiagonalMatrix& A) {
    const Index n = A.order();
    assert(n >= 1);
    TriToeplitz T;
    T.n = n;
    T.delta = A.diag.mean();
    if (n > 1) {
        T.sigma = A.sub.mean();
        T.tau = A.sup.mean();
    }
    return T;
}

double distance_to(const TridiagonalMatrix& A, const TriToeplitz& T) {
    double s = 0.0;
    for (Index i = 0; i < A.diag.size(); ++i) s += std::norm(A.diag(i) - T.delta);
    for (Index i = 0; i < A.sub.size(); ++i) {
        s += std::norm(A.sub(i) - T.sigma);
        s += std::norm(A.sup(i) - T.tau);
    }
    return std::sqrt(s);
}

TracelessReport traceless_analysis(const TriToeplitz& T) {
    if (!is_real_symmetric(T))
        throw NotSymmetric("traceless_analysis requires sigma = tau real");
    const double scale = std::max(std::abs(T.sigma), 1e-300);
    if (std::abs(T.delta) > 1e-12 * scale)
        throw NotTraceless("traceless_analysis requires a vanishing diagonal mean");
    TracelessReport out{};
    if (T.sigma == Complex(0) || T.n % 2 == 1) {
        out.singular = true;
        return out;
    }
    out.singular = false;
    out.kappa2 = cos_pi_ratio(1, T.n + 1) / cos_pi_ratio(T.n, 2 * (T.n + 1));
    return out;
}

HoffmanWielandt hoffman_wielandt_check(const TridiagonalMatrix& A) {
    return hoffman_wielandt_check(A, nearest_toeplitz(A));
}

HoffmanWielandt hoffman_wielandt_check(const TridiagonalMatrix& A,
                                       const TriToeplitz& reference) {
    require_real_symmetric(A, "hoffman_wielandt_check");
    const Index n = A.order();
    const std::vector<double> la = sorted_real_desc(numeric::qr_eigenvalues(A.dense()));
    const std::vector<double> lt = sorted_real_desc(spectra::eigenvalues(reference));
    double lhs = 0.0;
    for (Index i = 0; i < n; ++i) {
        const double d = la[static_cast<size_t>(i)] - lt[static_cast<size_t>(i)];
        lhs += d * d;
    }
    const double dist = distance_to(A, reference);
    return {lhs / static_cast<double>(n), dist * dist / static_cast<double>(n)};
}

bool positive_definite_projection_check(const TridiagonalMatrix& A) {
    require_real_symmetric(A, "positive_definite_projection_check");
    const TriToeplitz T = nearest_toeplitz(A);
    return T.delta.real() >
           2.0 * T.sigma.real() * cos_pi_ratio(1, A.order() + 1);
}

ProjectionReport project_report(const TridiagonalMatrix& A) {
    require_real_symmetric(A, "project_report");
    ProjectionReport rep;
    rep.nearest = nearest_toeplitz(A);
    rep.distance = distance_to(A, rep.nearest);
    const HoffmanWielandt hw = hoffman_wielandt_check(A);
    rep.hw_lhs = hw.lhs;
    rep.hw_rhs = hw.rhs;
    const double scale = std::max(std::abs(rep.nearest.sigma), 1e-300);
    rep.traceless = std::abs(rep.nearest.delta) <= 1e-12 * scale;
    if (rep.traceless && A.order() % 2 == 0) {
        TriToeplitz T0 = rep.nearest;
        T0.delta = Complex(0);
        const TracelessReport tr = traceless_analysis(T0);
        rep.kappa2 = tr.kappa2;
    }
    rep.positive_definite = positive_definite_projection_check(A);
    return rep;
}

RefineContext prepare_refinement(const TridiagonalMatrix& A) {
    const Index n = A.order();
    RefineContext ctx;
    ctx.nearest = nearest_toeplitz(A);
    if (!ctx.nearest.coupled())
        throw DegenerateCase("nearest Toeplitz member has sigma*tau == 0");

    const spectra::BranchRoots br = spectra::roots(ctx.nearest);
    const double log_r = std::abs(std::log(std::abs(br.ratio)));
    if (static_cast<double>(n) * log_r > 690.0)
        throw ScaleOverflow("eigenvector matrix entries exceed double range");
    if (static_cast<double>(n - 1) * log_r > 12.0 * std::log(10.0))
        ctx.warnings.push_back(
            "eigenvector basis conditioning exceeds 1e12; accuracy degrades");

    ctx.factor = spectra::spectral_factorization(ctx.nearest);

    // B = Lambda + (2/(n+1)) S (D^{-1} (A - T) D) S with D = diag(r^k):
    // the scaled difference stays tridiagonal with entries within a factor
    // r^{+/-1} of the originals, so no large powers ever appear.
    const Complex r = br.ratio;
    Vector dsub(n - 1), ddiag(n), dsup(n - 1);
    for (Index i = 0; i < n - 1; ++i) {
        dsub(i) = (A.sub(i) - ctx.nearest.sigma) / r;
        dsup(i) = (A.sup(i) - ctx.nearest.tau) * r;
    }
    for (Index i = 0; i < n; ++i) ddiag(i) = A.diag(i) - ctx.nearest.delta;

    RealMatrix S(n, n);
    for (Index i = 1; i <= n; ++i)
        for (Index k = 1; k <= n; ++k)
            S(i - 1, k - 1) = trig::sin_pi_ratio(i * k, n + 1);

    Matrix P(n, n);  // (D^{-1} (A - T) D) S, one band triple per row
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j) {
            Complex v = ddiag(k) * S(k, j);
            if (k > 0) v += dsub(k - 1) * S(k - 1, j);
            if (k + 1 < n) v += dsup(k) * S(k + 1, j);
            P(k, j) = v;
        }
    ctx.B = ctx.factor.inv_scale * (S.cast<Complex>() * P);
    ctx.B.diagonal() += ctx.factor.values;
    return ctx;
}

RefinedFactorization refine_spectral_factorization(const TridiagonalMatrix& A) {
    RefineContext ctx = prepare_refinement(A);
    const Index n = A.order();
    const Vector d = numeric::qr_eigenvalues(ctx.B);

    Matrix Y(n, n);
    Vector values(n);
    for (Index j = 0; j < n; ++j) {
        Index k0 = 0;
        for (Index k = 1; k < n; ++k)
            if (std::abs(ctx.B(k, k) - d(j)) < std::abs(ctx.B(k0, k0) - d(j))) k0 = k;
        numeric::InverseIterationOptions opts;
        opts.seed = static_cast<std::uint64_t>(j);
        Vector start = Vector::Zero(n);
        start(k0) = Complex(1);
        opts.start = start;
        const Vector y = numeric::inverse_iteration(ctx.B, d(j), opts);
        Y.col(j) = y;
        values(j) = y.dot(ctx.B * y);
    }

    RefinedFactorization out;
    out.values = values;
    out.vectors = ctx.factor.right * Y;
    out.warnings = std::move(ctx.warnings);
    double worst = 0.0;
    for (Index j = 0; j < n; ++j) {
        const Vector z = out.vectors.col(j);
        const double nz = z.stableNorm();
        if (nz == 0.0) continue;
        const double res = (A.apply(z) - values(j) * z).stableNorm() / nz;
        worst = std::max(worst, res);
    }
    out.residual = worst;
    return out;
}

double accuracy_report(const Vector& computed, const Vector& exact) {
    if (computed.size() != exact.size())
        throw LengthMismatch("accuracy_report requires spectra of equal length");
    const std::vector<Complex> a = sorted_desc(computed);
    const std::vector<Complex> b = sorted_desc(exact);
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace tritospec::apps
