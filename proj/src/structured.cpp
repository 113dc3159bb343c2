#include "tritospec/structured.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "tritospec/conditioning.hpp"
#include "tritospec/spectra.hpp"

namespace tritospec::structured {

namespace {

using trig::cos_pi_ratio;
using trig::sin_pi_ratio;

void require_real_symmetric(const TriToeplitz& T, const char* who) {
    if (!is_real_symmetric(T))
        throw SubspaceMismatch(std::string(who) + " requires a real symmetric member");
}

void require_real_skew(const TriToeplitz& T, const char* who) {
    if (!is_real_shifted_skew(T))
        throw SubspaceMismatch(std::string(who) +
                               " requires a real shifted skew-symmetric member");
}

void require_sign(int eps_sign) {
    if (eps_sign != 1 && eps_sign != -1)
        throw std::invalid_argument("eps_sign must be +1 or -1");
}

}  // namespace

const char* subspace_name(Subspace s) {
    switch (s) {
        case Subspace::Toeplitz: return "T";
        case Subspace::SymmetricToeplitz: return "ST";
        case Subspace::SkewToeplitz: return "AT";
    }
    return "?";
}

WilkinsonPerturbation wilkinson(const TriToeplitz& T, Index h) {
    if (!T.coupled())
        throw DegenerateCase("wilkinson requires sigma*tau != 0");
    const Vector x = unit(spectra::right_eigenvector(T, h));
    const Vector y = unit(spectra::left_eigenvector(T, h));
    return {h, y * x.adjoint()};
}

Matrix StructuredProjection::dense(Index n) const {
    Matrix A = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        A(i, i) = delta;
        if (i + 1 < n) {
            A(i + 1, i) = sigma;
            A(i, i + 1) = tau;
        }
    }
    return A;
}

StructuredProjection project_subspace(const Matrix& W, Subspace s) {
    const Index n = W.rows();
    if (W.cols() != n) throw LengthMismatch("project_subspace expects a square matrix");
    Complex sum_sub{}, sum_diag{}, sum_sup{};
    for (Index i = 0; i < n; ++i) {
        sum_diag += W(i, i);
        if (i + 1 < n) {
            sum_sub += W(i + 1, i);
            sum_sup += W(i, i + 1);
        }
    }
    const double off = static_cast<double>(n - 1);
    StructuredProjection p;
    p.subspace = s;
    switch (s) {
        case Subspace::Toeplitz:
            p.delta = sum_diag / static_cast<double>(n);
            p.sigma = n > 1 ? sum_sub / off : Complex(0);
            p.tau = n > 1 ? sum_sup / off : Complex(0);
            break;
        case Subspace::SymmetricToeplitz: {
            p.delta = Complex(sum_diag.real() / static_cast<double>(n), 0.0);
            const double o =
                n > 1 ? (sum_sub.real() + sum_sup.real()) / (2.0 * off) : 0.0;
            p.sigma = p.tau = Complex(o, 0.0);
            break;
        }
        case Subspace::SkewToeplitz: {
            p.delta = Complex(sum_diag.real() / static_cast<double>(n), 0.0);
            const double o =
                n > 1 ? (sum_sub.real() - sum_sup.real()) / (2.0 * off) : 0.0;
            p.sigma = Complex(o, 0.0);
            p.tau = Complex(-o, 0.0);
            break;
        }
    }
    p.frobenius_norm =
        std::sqrt(static_cast<double>(n) * std::norm(p.delta) +
                  off * (std::norm(p.sigma) + std::norm(p.tau)));
    return p;
}

double eig_condition(const TriToeplitz& T, Index h, Subspace s) {
    assert(h >= 1 && h <= T.n);
    const Index n = T.n;
    // Order one has no off-diagonal band; only the diagonal term survives.
    const double band = n > 1 ? std::pow(cos_pi_ratio(h, n + 1), 2) /
                                    static_cast<double>(n - 1)
                              : 0.0;
    switch (s) {
        case Subspace::Toeplitz: {
            if (!T.coupled())
                throw DegenerateCase("structured eig_condition requires sigma*tau != 0");
            const double rho = std::abs(T.sigma) / std::abs(T.tau);
            return std::sqrt(1.0 / static_cast<double>(n) + (rho + 1.0 / rho) * band);
        }
        case Subspace::SymmetricToeplitz:
            require_real_symmetric(T, "structured eig_condition");
            return std::sqrt(1.0 / static_cast<double>(n) + 2.0 * band);
        case Subspace::SkewToeplitz:
            require_real_skew(T, "structured eig_condition");
            return 1.0 / std::sqrt(static_cast<double>(n));
    }
    return 0.0;
}

Matrix worst_case_perturbation(const TriToeplitz& T, Index h, Subspace s) {
    const WilkinsonPerturbation wp = wilkinson(T, h);
    const StructuredProjection p = project_subspace(wp.W, s);
    if (p.frobenius_norm <= 1e-14)
        throw ZeroProjection("structured projection of the Wilkinson perturbation vanishes");
    return p.dense(T.n) / p.frobenius_norm;
}

double pseudoeigenvalue_symmetric(const TriToeplitz& T, Index j, int eps_sign,
                                  double eps) {
    require_real_symmetric(T, "pseudoeigenvalue_symmetric");
    require_sign(eps_sign);
    assert(j >= 1 && j <= T.n && eps >= 0.0);
    const Index n = T.n;
    const double c = cos_pi_ratio(j, n + 1);
    const double kappa = eig_condition(T, j, Subspace::SymmetricToeplitz);
    const double delta_hat = 1.0 / (static_cast<double>(n) * kappa);
    const double sigma_hat =
        n > 1 ? c / (static_cast<double>(n - 1) * kappa) : 0.0;
    const double e = eps_sign > 0 ? eps : -eps;
    return T.delta.real() + e * delta_hat +
           2.0 * (T.sigma.real() + e * sigma_hat) * c;
}

Complex pseudoeigenvalue_skew(const TriToeplitz& T, Index h, int eps_sign,
                              double eps) {
    require_real_skew(T, "pseudoeigenvalue_skew");
    require_sign(eps_sign);
    assert(h >= 1 && h <= T.n && eps >= 0.0);
    const double e = eps_sign > 0 ? eps : -eps;
    return Complex(T.delta.real() + e / std::sqrt(static_cast<double>(T.n)),
                   2.0 * std::abs(T.sigma) * cos_pi_ratio(h, T.n + 1));
}

PseudospectrumBoundary structured_pseudospectrum(const TriToeplitz& T, double eps,
                                                 PseudospectrumKind kind,
                                                 int samples) {
    PseudospectrumBoundary out;
    out.kind = kind;
    switch (kind) {
        case PseudospectrumKind::Hermitian:
            for (Index h = 1; h <= T.n; ++h) {
                const double a = pseudoeigenvalue_symmetric(T, h, -1, eps);
                const double b = pseudoeigenvalue_symmetric(T, h, +1, eps);
                out.segments.push_back({Complex(std::min(a, b), 0.0),
                                        Complex(std::max(a, b), 0.0)});
            }
            break;
        case PseudospectrumKind::Skew:
            for (Index h = 1; h <= T.n; ++h) {
                const Complex a = pseudoeigenvalue_skew(T, h, -1, eps);
                const Complex b = pseudoeigenvalue_skew(T, h, +1, eps);
                out.segments.push_back(a.real() <= b.real()
                                           ? std::array<Complex, 2>{a, b}
                                           : std::array<Complex, 2>{b, a});
            }
            break;
        case PseudospectrumKind::Ellipse: {
            if (!T.coupled())
                throw DegenerateCase("ellipse boundary requires sigma*tau != 0");
            out.ellipse.reserve(static_cast<size_t>(samples));
            for (int j = 0; j < samples; ++j) {
                const double theta = 2.0 * M_PI * j / samples;
                const Complex z = std::polar(1.0, theta);
                out.ellipse.push_back(T.tau * z + T.delta + T.sigma * std::conj(z));
            }
            break;
        }
    }
    return out;
}

double cos_theta_structured(const TriToeplitz& T, const TriToeplitz& T_eps, Index h) {
    if (!T.coupled() || !T_eps.coupled())
        throw DegenerateCase("cos_theta_structured requires sigma*tau != 0 on both members");
    if (!spectra::is_normal(T))
        throw NotNormal("cos_theta_structured requires a normal base matrix");
    assert(h >= 1 && h <= T.n && T.n == T_eps.n);
    const Index n = T.n;
    const Complex q = std::conj(spectra::roots(T).ratio);
    const Complex p = spectra::roots(T_eps).ratio;
    const GeometricPower mixed(q * p);
    const GeometricPower mod(Complex(std::norm(p), 0.0));  // |p|^{2k}
    Complex num{};
    double den = 0.0;
    for (Index k = 1; k <= n; ++k) {
        const double f = sin_pi_ratio(h * k, n + 1);
        num += mixed(k) * (f * f);
        den += mod(k).real() * (f * f);
    }
    const double half = static_cast<double>(n + 1) / 2.0;
    return std::abs(num) / std::sqrt(half * den);
}

StructuredRayleigh hermitian_structured_rayleigh(const TriToeplitz& T,
                                                 Complex sigma_eps, Index h) {
    if (!is_hermitian(T))
        throw NotHermitian("hermitian_structured_rayleigh requires tau = conj(sigma)");
    if (!T.coupled() || sigma_eps == Complex(0))
        throw DegenerateCase("hermitian_structured_rayleigh requires nonzero couplings");
    assert(h >= 1 && h <= T.n && T.n >= 2);

    const Index n = T.n;
    const double as = std::abs(T.sigma);
    const double darg = std::arg(T.sigma) - std::arg(sigma_eps);
    const double ch = cos_pi_ratio(h, n + 1);

    StructuredRayleigh out;
    out.lambda_tilde = T.delta.real() + 2.0 * as * std::cos(darg) * ch;

    // Perturbed eigenvector in closed form, ||x_eps||^2 = (n+1)/2.
    Vector x_eps(n);
    const double phase = std::arg(sigma_eps);
    for (Index k = 1; k <= n; ++k)
        x_eps(k - 1) = std::polar(1.0, phase * static_cast<double>(k)) *
                       sin_pi_ratio(h * k, n + 1);
    const TridiagonalMatrix A(T);
    out.residual =
        (A.apply(x_eps) - Complex(out.lambda_tilde) * x_eps).stableNorm();

    const double norm_eps = std::sqrt(static_cast<double>(n + 1) / 2.0);
    const double spread = 4.0 * as * cos_pi_ratio(1, n + 1);
    out.lower = spread > 0.0 ? out.residual / (norm_eps * spread) : 0.0;
    const double lam_dist = 2.0 * as * std::abs(1.0 - std::cos(darg)) * std::abs(ch);
    out.upper = lam_dist > 0.0
                    ? out.residual / (norm_eps * lam_dist)
                    : std::numeric_limits<double>::infinity();
    return out;
}

double eig_drift_first_order(const TriToeplitz& T, Index h, const Matrix& E) {
    const Vector x = unit(spectra::right_eigenvector(T, h));
    const Vector y = unit(spectra::left_eigenvector(T, h));
    return std::abs(y.dot(E * x)) / std::abs(y.dot(x));
}

}  // namespace tritospec::structured
