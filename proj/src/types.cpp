#include "tritospec/types.hpp"

namespace tritospec {

Matrix TriToeplitz::dense() const {
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

double TriToeplitz::frobenius_norm() const {
    const double nn = static_cast<double>(n);
    return std::sqrt(nn * std::norm(delta) +
                     (nn - 1) * (std::norm(sigma) + std::norm(tau)));
}

TridiagonalMatrix::TridiagonalMatrix(Vector sub_, Vector diag_, Vector sup_)
    : sub(std::move(sub_)), diag(std::move(diag_)), sup(std::move(sup_)) {
    if (sub.size() != diag.size() - 1 || sup.size() != diag.size() - 1)
        throw LengthMismatch("tridiagonal bands must have lengths n-1, n, n-1");
}

TridiagonalMatrix::TridiagonalMatrix(const TriToeplitz& T)
    : sub(Vector::Constant(T.n - 1 > 0 ? T.n - 1 : 0, T.sigma)),
      diag(Vector::Constant(T.n, T.delta)),
      sup(Vector::Constant(T.n - 1 > 0 ? T.n - 1 : 0, T.tau)) {}

Matrix TridiagonalMatrix::dense() const {
    const Index n = order();
    Matrix A = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        A(i, i) = diag(i);
        if (i + 1 < n) {
            A(i + 1, i) = sub(i);
            A(i, i + 1) = sup(i);
        }
    }
    return A;
}

Vector TridiagonalMatrix::apply(const Vector& v) const {
    const Index n = order();
    if (v.size() != n) throw LengthMismatch("vector length does not match matrix order");
    Vector w(n);
    for (Index i = 0; i < n; ++i) {
        Complex s = diag(i) * v(i);
        if (i > 0) s += sub(i - 1) * v(i - 1);
        if (i + 1 < n) s += sup(i) * v(i + 1);
        w(i) = s;
    }
    return w;
}

double TridiagonalMatrix::frobenius_norm() const {
    return std::sqrt(sub.squaredNorm() + diag.squaredNorm() + sup.squaredNorm());
}

bool TridiagonalMatrix::is_real_symmetric(double tol) const {
    double scale = 0.0;
    for (Index i = 0; i < diag.size(); ++i) scale = std::max(scale, std::abs(diag(i)));
    for (Index i = 0; i < sub.size(); ++i)
        scale = std::max({scale, std::abs(sub(i)), std::abs(sup(i))});
    const double bound = tol * std::max(scale, 1.0);
    for (Index i = 0; i < diag.size(); ++i)
        if (std::abs(diag(i).imag()) > bound) return false;
    for (Index i = 0; i < sub.size(); ++i) {
        if (std::abs(sub(i).imag()) > bound || std::abs(sup(i).imag()) > bound)
            return false;
        if (std::abs(sub(i) - sup(i)) > bound) return false;
    }
    return true;
}

int alpha_sign(ToeplitzTypeCase c) {
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::ZeroMinus: return 0;
        case ToeplitzTypeCase::PlusZero:
        case ToeplitzTypeCase::PlusMinus:
        case ToeplitzTypeCase::PlusPlus: return 1;
        case ToeplitzTypeCase::MinusZero:
        case ToeplitzTypeCase::MinusPlus:
        case ToeplitzTypeCase::MinusMinus: return -1;
    }
    return 0;
}

int beta_sign(ToeplitzTypeCase c) {
    switch (c) {
        case ToeplitzTypeCase::PlusZero:
        case ToeplitzTypeCase::MinusZero: return 0;
        case ToeplitzTypeCase::ZeroPlus:
        case ToeplitzTypeCase::MinusPlus:
        case ToeplitzTypeCase::PlusPlus: return 1;
        case ToeplitzTypeCase::ZeroMinus:
        case ToeplitzTypeCase::PlusMinus:
        case ToeplitzTypeCase::MinusMinus: return -1;
    }
    return 0;
}

const char* case_name(ToeplitzTypeCase c) {
    switch (c) {
        case ToeplitzTypeCase::ZeroPlus: return "0+";
        case ToeplitzTypeCase::PlusZero: return "+0";
        case ToeplitzTypeCase::ZeroMinus: return "0-";
        case ToeplitzTypeCase::MinusZero: return "-0";
        case ToeplitzTypeCase::PlusMinus: return "+-";
        case ToeplitzTypeCase::MinusPlus: return "-+";
        case ToeplitzTypeCase::PlusPlus: return "++";
        case ToeplitzTypeCase::MinusMinus: return "--";
    }
    return "?";
}

ToeplitzTypeCase case_from_name(const std::string& name) {
    for (ToeplitzTypeCase c : kAllTypeCases)
        if (name == case_name(c)) return c;
    throw std::invalid_argument("unknown corner case \"" + name +
                                "\" (expected one of 0+ +0 0- -0 +- -+ ++ --)");
}

namespace {

double param_scale(const TriToeplitz& T) {
    return std::max({std::abs(T.sigma), std::abs(T.tau), std::abs(T.delta), 1e-300});
}

}  // namespace

bool is_hermitian(const TriToeplitz& T, double tol) {
    const double bound = tol * param_scale(T);
    return std::abs(T.tau - std::conj(T.sigma)) <= bound &&
           std::abs(T.delta.imag()) <= bound;
}

bool is_real_symmetric(const TriToeplitz& T, double tol) {
    const double bound = tol * param_scale(T);
    return std::abs(T.sigma.imag()) <= bound && std::abs(T.tau.imag()) <= bound &&
           std::abs(T.delta.imag()) <= bound && std::abs(T.sigma - T.tau) <= bound;
}

bool is_real_shifted_skew(const TriToeplitz& T, double tol) {
    const double bound = tol * param_scale(T);
    return std::abs(T.sigma.imag()) <= bound && std::abs(T.tau.imag()) <= bound &&
           std::abs(T.delta.imag()) <= bound && std::abs(T.sigma + T.tau) <= bound;
}

namespace trig {

double sin_pi_ratio(long long num, long long den) {
    long long m = num % (2 * den);
    if (m < 0) m += 2 * den;
    double sign = 1.0;
    if (m >= den) {
        sign = -1.0;
        m -= den;
    }
    if (2 * m > den) m = den - m;  // fold into [0, den/2]
    return sign * std::sin(M_PI * static_cast<double>(m) / static_cast<double>(den));
}

double cos_pi_ratio(long long num, long long den) {
    return sin_pi_ratio(2 * num + den, 2 * den);
}

}  // namespace trig

Vector unit(const Vector& v) {
    const double nv = v.stableNorm();
    if (nv == 0.0) throw DegenerateCase("cannot normalize the zero vector");
    return v / nv;
}

}  // namespace tritospec
