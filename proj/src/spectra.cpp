#include "tritospec/spectra.hpp"

#include <cassert>

namespace tritospec::spectra {

namespace {

void require_coupled(const TriToeplitz& T, const char* who) {
    if (!T.coupled())
        throw DegenerateCase(std::string(who) + " requires sigma*tau != 0");
}

void require_order(const TriToeplitz& T, Index min_n, const char* who) {
    if (T.n < min_n)
        throw std::invalid_argument(std::string(who) + ": order too small");
}

// Cosine argument of the case-c eigenvalue as an integer ratio num/den
// (times pi).
void eig_angle(ToeplitzTypeCase c, Index n, Index h, long long& num, long long& den) {
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::PlusZero:
            num = 2 * h;
            den = 2 * n + 1;
            return;
        case ToeplitzTypeCase::ZeroMinus:
        case ToeplitzTypeCase::MinusZero:
            num = 2 * h - 1;
            den = 2 * n + 1;
            return;
        case ToeplitzTypeCase::PlusMinus:
        case ToeplitzTypeCase::MinusPlus:
            num = 2 * h - 1;
            den = 2 * n;
            return;
        case ToeplitzTypeCase::PlusPlus:
            num = 2 * h;
            den = 2 * n;
            return;
        case ToeplitzTypeCase::MinusMinus:
            num = 2 * h - 2;
            den = 2 * n;
            return;
    }
}

}  // namespace

BranchRoots roots(const TriToeplitz& T) {
    require_coupled(T, "roots");
    const Complex off = std::sqrt(T.sigma * T.tau);
    return {off, off / T.tau, off / T.sigma};
}

Vector eigenvalues(const TriToeplitz& T) {
    if (!T.coupled()) return Vector::Constant(T.n, T.delta);
    const Complex s = roots(T).off;
    Vector lam(T.n);
    for (Index h = 1; h <= T.n; ++h)
        lam(h - 1) = T.delta + 2.0 * s * trig::cos_pi_ratio(h, T.n + 1);
    return lam;
}

Vector right_eigenvector(const TriToeplitz& T, Index h) {
    require_coupled(T, "right_eigenvector");
    assert(h >= 1 && h <= T.n);
    const GeometricPower rp(roots(T).ratio);
    Vector x(T.n);
    for (Index k = 1; k <= T.n; ++k)
        x(k - 1) = rp(k) * trig::sin_pi_ratio(h * k, T.n + 1);
    return x;
}

Vector left_eigenvector(const TriToeplitz& T, Index h) {
    require_coupled(T, "left_eigenvector");
    assert(h >= 1 && h <= T.n);
    const GeometricPower wp(roots(T).left_ratio);
    Vector y(T.n);
    for (Index k = 1; k <= T.n; ++k)
        y(k - 1) = std::conj(wp(k)) * trig::sin_pi_ratio(h * k, T.n + 1);
    return y;
}

std::pair<Vector, Vector> degenerate_eigenvectors(const TriToeplitz& T) {
    if (T.coupled())
        throw DegenerateCase("degenerate_eigenvectors requires sigma*tau == 0");
    Vector e1 = Vector::Zero(T.n);
    e1(0) = Complex(1);
    Vector en = Vector::Zero(T.n);
    en(T.n - 1) = Complex(1);
    if (T.sigma == Complex(0) && T.tau != Complex(0)) return {e1, en};
    if (T.sigma != Complex(0) && T.tau == Complex(0)) return {en, e1};
    return {e1, e1};  // diagonal matrix: any coordinate vector works
}

TridiagonalMatrix make_type(const TriToeplitz& T, ToeplitzTypeCase c) {
    require_coupled(T, "make_type");
    require_order(T, 2, "make_type");
    const Complex s = roots(T).off;
    TridiagonalMatrix A(T);
    A.diag(0) -= static_cast<double>(alpha_sign(c)) * s;
    A.diag(T.n - 1) -= static_cast<double>(beta_sign(c)) * s;
    return A;
}

Vector eigenvalues(const TriToeplitz& T, ToeplitzTypeCase c) {
    require_coupled(T, "eigenvalues");
    require_order(T, 2, "eigenvalues");
    const Complex s = roots(T).off;
    Vector lam(T.n);
    for (Index h = 1; h <= T.n; ++h) {
        long long num = 0, den = 1;
        eig_angle(c, T.n, h, num, den);
        lam(h - 1) = T.delta + 2.0 * s * trig::cos_pi_ratio(num, den);
    }
    return lam;
}

double type_vector_factor(ToeplitzTypeCase c, Index n, Index h, Index k) {
    using trig::cos_pi_ratio;
    using trig::sin_pi_ratio;
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
            return sin_pi_ratio(2LL * h * k, 2 * n + 1);
        case ToeplitzTypeCase::PlusZero:
            return sin_pi_ratio(1LL * h * (2 * k - 1), 2 * n + 1);
        case ToeplitzTypeCase::ZeroMinus:
            return sin_pi_ratio((2LL * h - 1) * k, 2 * n + 1);
        case ToeplitzTypeCase::MinusZero:
            return cos_pi_ratio((2LL * h - 1) * (2 * k - 1), 2 * (2 * n + 1));
        case ToeplitzTypeCase::PlusMinus:
            return sin_pi_ratio((2LL * h - 1) * (2 * k - 1), 4 * n);
        case ToeplitzTypeCase::MinusPlus:
            return cos_pi_ratio((2LL * h - 1) * (2 * k - 1), 4 * n);
        case ToeplitzTypeCase::PlusPlus:
            return sin_pi_ratio(1LL * h * (2 * k - 1), 2 * n);
        case ToeplitzTypeCase::MinusMinus:
            return cos_pi_ratio((1LL * h - 1) * (2 * k - 1), 2 * n);
    }
    return 0.0;
}

Vector right_eigenvector(const TriToeplitz& T, ToeplitzTypeCase c, Index h) {
    require_coupled(T, "right_eigenvector");
    require_order(T, 2, "right_eigenvector");
    assert(h >= 1 && h <= T.n);
    const GeometricPower rp(roots(T).ratio);
    Vector x(T.n);
    for (Index k = 1; k <= T.n; ++k)
        x(k - 1) = rp(k) * type_vector_factor(c, T.n, h, k);
    return x;
}

Vector left_eigenvector(const TriToeplitz& T, ToeplitzTypeCase c, Index h) {
    require_coupled(T, "left_eigenvector");
    require_order(T, 2, "left_eigenvector");
    assert(h >= 1 && h <= T.n);
    const GeometricPower wp(roots(T).left_ratio);
    Vector y(T.n);
    for (Index k = 1; k <= T.n; ++k)
        y(k - 1) = std::conj(wp(k)) * type_vector_factor(c, T.n, h, k);
    return y;
}

bool is_normal(const TriToeplitz& T) {
    const double as = std::abs(T.sigma), at = std::abs(T.tau);
    return std::abs(as - at) <= 1e-12 * std::max(as, at);
}

bool is_normal(const TriToeplitz& T, ToeplitzTypeCase) {
    // Every tabulated corner modification of a normal T is normal.
    return is_normal(T);
}

Balance diagonal_balance(const TriToeplitz& T) {
    require_coupled(T, "diagonal_balance");
    const double as = std::abs(T.sigma), at = std::abs(T.tau);
    Complex v(std::sqrt(at / as), 0.0);
    // Real parameters of equal sign: pick v with v*sigma = tau/v, which also
    // makes the balanced matrix symmetric.
    if (T.sigma.imag() == 0.0 && T.tau.imag() == 0.0 &&
        T.sigma.real() * T.tau.real() > 0.0)
        v = Complex(std::sqrt(T.tau.real() / T.sigma.real()), 0.0);
    return {v, TriToeplitz{T.n, v * T.sigma, T.delta, T.tau / v}};
}

Vector SpectralFactorization::apply_inverse(const Vector& v) const {
    return apply_inverse(Matrix(v)).col(0);
}

Matrix SpectralFactorization::apply_inverse(const Matrix& M) const {
    const Index n = values.size();
    if (M.rows() != n) throw LengthMismatch("apply_inverse: row count mismatch");
    const GeometricPower rp(ratio_root);
    Matrix P = M;
    for (Index k = 1; k <= n; ++k) P.row(k - 1) *= rp(-k);
    Matrix out = Matrix::Zero(n, M.cols());
    for (Index i = 1; i <= n; ++i)
        for (Index k = 1; k <= n; ++k) {
            const double s = trig::sin_pi_ratio(i * k, n + 1);
            out.row(i - 1) += s * P.row(k - 1);
        }
    return inv_scale * out;
}

SpectralFactorization spectral_factorization(const TriToeplitz& T) {
    require_coupled(T, "spectral_factorization");
    const BranchRoots br = roots(T);
    SpectralFactorization f;
    f.values = eigenvalues(T);
    f.inv_scale = 2.0 / static_cast<double>(T.n + 1);
    f.ratio_root = br.ratio;
    f.right.resize(T.n, T.n);
    f.left.resize(T.n, T.n);
    for (Index h = 1; h <= T.n; ++h) {
        f.right.col(h - 1) = right_eigenvector(T, h);
        f.left.col(h - 1) = left_eigenvector(T, h);
    }
    return f;
}

}  // namespace tritospec::spectra
