#pragma once

#include <utility>

#include "tritospec/types.hpp"

namespace tritospec::spectra {

/// Square roots used throughout the closed forms. `off` is the principal
/// sqrt(sigma*tau); `ratio` = off/tau and `left_ratio` = off/sigma are the
/// matching square roots of sigma/tau and tau/sigma, so that each eigenvalue
/// pairs exactly with the eigenvector of the same index.
struct BranchRoots {
    Complex off;
    Complex ratio;
    Complex left_ratio;
};

BranchRoots roots(const TriToeplitz& T);  // DegenerateCase if sigma*tau == 0

/// Eigenvalues delta + 2 sqrt(sigma*tau) cos(h pi/(n+1)), h = 1..n.
/// If sigma*tau == 0 the spectrum is delta with multiplicity n.
Vector eigenvalues(const TriToeplitz& T);

/// Unnormalized eigenvectors, 1-based index h. DegenerateCase when
/// sigma*tau == 0 (use degenerate_eigenvectors).
Vector right_eigenvector(const TriToeplitz& T, Index h);
Vector left_eigenvector(const TriToeplitz& T, Index h);

/// sigma = 0 or tau = 0: the single eigenvalue delta has geometric
/// multiplicity one and coordinate-vector eigenvectors.
std::pair<Vector, Vector> degenerate_eigenvectors(const TriToeplitz& T);

/// Corner-modified family. All require sigma*tau != 0 and n >= 2.
TridiagonalMatrix make_type(const TriToeplitz& T, ToeplitzTypeCase c);
Vector eigenvalues(const TriToeplitz& T, ToeplitzTypeCase c);
Vector right_eigenvector(const TriToeplitz& T, ToeplitzTypeCase c, Index h);
Vector left_eigenvector(const TriToeplitz& T, ToeplitzTypeCase c, Index h);

/// Trigonometric factor of the case-c eigenvector component (k = 1..n).
double type_vector_factor(ToeplitzTypeCase c, Index n, Index h, Index k);

bool is_normal(const TriToeplitz& T);
bool is_normal(const TriToeplitz& T, ToeplitzTypeCase c);

struct Balance {
    Complex v;            // |v sigma| = |tau / v|
    TriToeplitz balanced; // (n; v sigma, delta, tau / v), normal
};

/// Diagonal similarity scaling that equalizes the off-diagonal moduli.
Balance diagonal_balance(const TriToeplitz& T);

/// T = X diag(values) X^{-1} with X = D S, D = diag(r, r^2, ..., r^n),
/// S(k,h) = sin(hk pi/(n+1)). Since S^2 = ((n+1)/2) I, the inverse applies
/// analytically as X^{-1} = (2/(n+1)) S D^{-1}.
struct SpectralFactorization {
    Vector values;
    Matrix right;      // X, columns per the closed form (unnormalized)
    Matrix left;       // Y
    double inv_scale;  // 2/(n+1)
    Complex ratio_root;

    Vector apply_inverse(const Vector& v) const;
    Matrix apply_inverse(const Matrix& M) const;
};

SpectralFactorization spectral_factorization(const TriToeplitz& T);

}  // namespace tritospec::spectra
