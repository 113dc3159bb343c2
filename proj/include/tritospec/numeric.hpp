#pragma once

#include <cstdint>
#include <optional>

#include "tritospec/types.hpp"

namespace tritospec::numeric {

struct QR {
    Matrix Q;  // orthonormal columns, rows(M) x cols(M)
    Matrix R;  // upper triangular, cols(M) x cols(M), real nonnegative diagonal
};

/// Householder QR of M (rows >= cols). Rank deficiency is permitted; R may
/// have zero diagonal entries.
QR householder_qr(const Matrix& M);

struct PivotedQR {
    Matrix Q;             // full square
    Matrix R;             // rows(M) x cols(M)
    Eigen::VectorXi perm; // M.col(perm(j)) is the j-th pivoted column
    Index rank;           // diagonal entries above rank_tol * |R(0,0)|
};

PivotedQR householder_qr_pivoted(const Matrix& M, double rank_tol = 1e-12);

struct HessenbergForm {
    Matrix H;  // upper Hessenberg
    Matrix U;  // unitary, U^H M U = H
};

HessenbergForm hessenberg(const Matrix& M);

/// Eigenvalues with multiplicity: Hessenberg reduction followed by implicitly
/// shifted complex QR with Wilkinson shift; a subdiagonal entry deflates when
/// it falls below 1e-14 * (|h_kk| + |h_k+1,k+1|).
/// Throws NonConvergence if any eigenvalue needs more than 100*n iterations.
Vector qr_eigenvalues(const Matrix& M);

struct InverseIterationOptions {
    std::uint64_t seed = 0;
    std::optional<Vector> start;  // default: random unit vector
    double tol = 1e-10;           // relative to ||M||_F
};

/// Unit eigenvector for the eigenvalue nearest `shift`. A singular shifted
/// solve signals convergence; NonConvergence only after 3 random restarts.
Vector inverse_iteration(const Matrix& M, Complex shift,
                         const InverseIterationOptions& opts = {});

/// Singular values by one-sided Jacobi (sweeps until every rotation angle is
/// below 1e-14, at most 30 sweeps), descending order.
RealVector singular_values(const Matrix& M);
double smallest_singular_value(const Matrix& M);

struct EigenDecomposition {
    Vector values;
    Matrix vectors;  // unit right eigenvectors, column h pairs with values(h)
};

/// qr_eigenvalues + one inverse iteration per eigenvalue. Validates the
/// residual ||M v - lambda v|| <= tol * ||M||_F for every pair.
EigenDecomposition eigendecompose(const Matrix& M, double tol = 1e-9,
                                  std::uint64_t seed = 0);

}  // namespace tritospec::numeric
