#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace tritospec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical failures carry a stable name so front ends can surface it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define TRITOSPEC_DEFINE_ERROR(E)                                          \
    class E : public Error {                                               \
    public:                                                                \
        explicit E(const std::string& what) : Error(#E, what) {}           \
    }

TRITOSPEC_DEFINE_ERROR(DegenerateCase);
TRITOSPEC_DEFINE_ERROR(ScaleOverflow);
TRITOSPEC_DEFINE_ERROR(NonConvergence);
TRITOSPEC_DEFINE_ERROR(NotNormal);
TRITOSPEC_DEFINE_ERROR(NotHermitian);
TRITOSPEC_DEFINE_ERROR(NotSymmetric);
TRITOSPEC_DEFINE_ERROR(NotTraceless);
TRITOSPEC_DEFINE_ERROR(SubspaceMismatch);
TRITOSPEC_DEFINE_ERROR(ZeroProjection);
TRITOSPEC_DEFINE_ERROR(RankDeficient);
TRITOSPEC_DEFINE_ERROR(AmbiguousMatch);
TRITOSPEC_DEFINE_ERROR(LengthMismatch);

#undef TRITOSPEC_DEFINE_ERROR

/// Tridiagonal Toeplitz matrix (n; sigma, delta, tau): constant subdiagonal
/// sigma, diagonal delta and superdiagonal tau.
struct TriToeplitz {
    Index n = 0;
    Complex sigma{};
    Complex delta{};
    Complex tau{};

    /// Both off-diagonal parameters nonzero (the spectrum is simple).
    bool coupled() const { return sigma != Complex(0) && tau != Complex(0); }

    Matrix dense() const;
    double frobenius_norm() const;
};

/// General complex tridiagonal matrix stored by its three bands.
struct TridiagonalMatrix {
    Vector sub;   // length n-1, entries (k+1, k)
    Vector diag;  // length n
    Vector sup;   // length n-1, entries (k, k+1)

    TridiagonalMatrix() = default;
    TridiagonalMatrix(Vector sub_, Vector diag_, Vector sup_);
    explicit TridiagonalMatrix(const TriToeplitz& T);

    Index order() const { return diag.size(); }
    Matrix dense() const;
    Vector apply(const Vector& v) const;
    double frobenius_norm() const;
    bool is_real_symmetric(double tol = 1e-12) const;
};

/// Corner modifications (alpha, beta) of a tridiagonal Toeplitz matrix with
/// alpha, beta in {0, +sqrt(sigma*tau), -sqrt(sigma*tau)}, not both zero.
/// Naming: first character is the sign of alpha, second the sign of beta.
enum class ToeplitzTypeCase {
    ZeroPlus,    // (0, +)
    PlusZero,    // (+, 0)
    ZeroMinus,   // (0, -)
    MinusZero,   // (-, 0)
    PlusMinus,   // (+, -)
    MinusPlus,   // (-, +)
    PlusPlus,    // (+, +)
    MinusMinus,  // (-, -)
};

constexpr ToeplitzTypeCase kAllTypeCases[] = {
    ToeplitzTypeCase::ZeroPlus,  ToeplitzTypeCase::PlusZero,
    ToeplitzTypeCase::ZeroMinus, ToeplitzTypeCase::MinusZero,
    ToeplitzTypeCase::PlusMinus, ToeplitzTypeCase::MinusPlus,
    ToeplitzTypeCase::PlusPlus,  ToeplitzTypeCase::MinusMinus,
};

int alpha_sign(ToeplitzTypeCase c);
int beta_sign(ToeplitzTypeCase c);
const char* case_name(ToeplitzTypeCase c);          // "0+", "+0", ...
ToeplitzTypeCase case_from_name(const std::string& name);

// Structural predicates on the parameter triple.
bool is_hermitian(const TriToeplitz& T, double tol = 1e-12);      // tau = conj(sigma), delta real
bool is_real_symmetric(const TriToeplitz& T, double tol = 1e-12); // sigma = tau real
bool is_real_shifted_skew(const TriToeplitz& T, double tol = 1e-12); // sigma = -tau real, delta real

namespace trig {

/// sin(pi * num / den) with the range reduction done on the integers, so the
/// usual index symmetries (h <-> n+1-h etc.) hold bit-exactly.
double sin_pi_ratio(long long num, long long den);
double cos_pi_ratio(long long num, long long den);

}  // namespace trig

/// Integer powers of a fixed complex base in log-polar form; delays overflow
/// until the result itself is unrepresentable.
class GeometricPower {
public:
    explicit GeometricPower(Complex base)
        : log_mod_(std::log(std::abs(base))), arg_(std::arg(base)) {}

    Complex operator()(long long k) const {
        const double t = static_cast<double>(k) * log_mod_;
        if (t > kMaxLog)
            throw ScaleOverflow("geometric factor exceeds double range");
        return std::polar(std::exp(t), static_cast<double>(k) * arg_);
    }

    double log_modulus() const { return log_mod_; }

private:
    static constexpr double kMaxLog = 700.0;
    double log_mod_;
    double arg_;
};

/// Unit 2-norm copy of v.
Vector unit(const Vector& v);

}  // namespace tritospec
