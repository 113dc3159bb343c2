#pragma once

#include <array>
#include <vector>

#include "tritospec/types.hpp"

namespace tritospec::structured {

/// Perturbation structure subspaces: complex tridiagonal Toeplitz, real
/// symmetric tridiagonal Toeplitz, real shifted skew-symmetric tridiagonal
/// Toeplitz.
enum class Subspace { Toeplitz, SymmetricToeplitz, SkewToeplitz };

const char* subspace_name(Subspace s);  // "T", "ST", "AT"

/// Rank-one unit-Frobenius perturbation built from the unit left/right
/// eigenvectors of lambda_h; it produces the largest first-order drift.
struct WilkinsonPerturbation {
    Index h;
    Matrix W;
};

WilkinsonPerturbation wilkinson(const TriToeplitz& T, Index h);

/// Orthogonal projection of a dense matrix onto a structure subspace,
/// described by its three band entries. The real subspaces use the real
/// inner product Re trace(B^H A).
struct StructuredProjection {
    Subspace subspace;
    Complex sigma, delta, tau;
    double frobenius_norm;

    Matrix dense(Index n) const;
};

StructuredProjection project_subspace(const Matrix& W, Subspace s);

/// Structured eigenvalue condition number kappa_S(lambda_h).
double eig_condition(const TriToeplitz& T, Index h, Subspace s);

/// Unit-Frobenius structured matrix with maximal first-order drift.
Matrix worst_case_perturbation(const TriToeplitz& T, Index h, Subspace s);

/// Eigenvalue of the symmetric member perturbed by +/- eps times the
/// worst-case symmetric-structured direction for index j.
double pseudoeigenvalue_symmetric(const TriToeplitz& T, Index j, int eps_sign,
                                  double eps);

/// Skew analogue: delta +/- eps/sqrt(n) + 2i|sigma| cos(h pi/(n+1)).
Complex pseudoeigenvalue_skew(const TriToeplitz& T, Index h, int eps_sign,
                              double eps);

enum class PseudospectrumKind { Hermitian, Skew, Ellipse };

struct PseudospectrumBoundary {
    PseudospectrumKind kind;
    // Hermitian / Skew: per-h segment endpoints, ordered by real part.
    std::vector<std::array<Complex, 2>> segments;
    // Ellipse: sampled boundary tau z + delta + sigma / z, |z| = 1. Emitted
    // as a reference curve only.
    std::vector<Complex> ellipse;
};

PseudospectrumBoundary structured_pseudospectrum(const TriToeplitz& T, double eps,
                                                 PseudospectrumKind kind,
                                                 int samples = 256);

/// Overlap cos(theta) between eigenvector h of the normal matrix T and of the
/// structured perturbation T_eps; depends only on sigma_eps/tau_eps.
double cos_theta_structured(const TriToeplitz& T, const TriToeplitz& T_eps, Index h);

struct StructuredRayleigh {
    double lambda_tilde;  // Rayleigh quotient of the perturbed eigenvector in T
    double lower, upper;  // sin(theta) bracket
    double residual;
};

/// Closed-form Rayleigh quotient and angle bracket for a Hermitian member
/// perturbed within the Hermitian structure (perturbed subdiagonal sigma_eps).
StructuredRayleigh hermitian_structured_rayleigh(const TriToeplitz& T,
                                                 Complex sigma_eps, Index h);

/// First-order drift rate |y^H E x| / |y^H x| of lambda_h in direction E;
/// equals the structured condition number when E is the worst case.
double eig_drift_first_order(const TriToeplitz& T, Index h, const Matrix& E);

}  // namespace tritospec::structured
