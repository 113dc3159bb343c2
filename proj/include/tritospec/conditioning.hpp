#pragma once

#include <optional>

#include "tritospec/types.hpp"

namespace tritospec::conditioning {

/// Per-eigenvalue sensitivity summary.
struct ConditionReport {
    Index h = 0;
    Complex lambda{};
    double min_gap = 0.0;
    double kappa_eig = 1.0;
    double kappa_vec = 0.0;
    std::optional<double> kappa_structured;
};

/// Distance from lambda_h to the rest of the spectrum, closed form.
/// Requires sigma*tau != 0 and n >= 2.
double min_gap(const TriToeplitz& T, Index h);
double min_gap(const TriToeplitz& T, ToeplitzTypeCase c, Index h);

/// Smallest gap over the whole spectrum.
double global_min_gap(const TriToeplitz& T);
double global_min_gap(const TriToeplitz& T, ToeplitzTypeCase c);

/// Eigenvalue condition number ||x|| ||y|| / |y^H x| in closed form; depends
/// only on h, n and |sigma/tau|.
double eig_condition(const TriToeplitz& T, Index h);
double eig_condition(const TriToeplitz& T, ToeplitzTypeCase c, Index h);

/// Eigenvector condition number of the normal family: 1/min_gap.
double eigvec_condition_normal(const TriToeplitz& T, Index h);
double eigvec_condition_normal(const TriToeplitz& T, ToeplitzTypeCase c, Index h);
double max_eigvec_condition(const TriToeplitz& T);
double max_eigvec_condition(const TriToeplitz& T, ToeplitzTypeCase c);

/// Eigenvector condition number of a simple eigenvalue mu of a general dense
/// matrix: 1 / sigma_min(mu I - U^H A U) where the columns of U span
/// Range(A - mu I). RankDeficient when mu is not simple at working precision.
double eigvec_condition_general(const Matrix& A, Complex mu, const Vector& x);

struct RayleighBounds {
    double lower = 0.0;
    double upper = 0.0;
    double rayleigh = 0.0;
    double residual = 0.0;
    double spread = 0.0;         // lambda_max - lambda_min from the closed form
    double spread_stated = 0.0;  // 2|sigma|cos(pi/(n+1)); differs from the
                                 // spectral spread by a factor 2, kept for
                                 // comparison in reports
};

/// Residual-based angle bracket for a unit pseudoeigenvector of a Hermitian
/// member: residual/spread <= sin(theta) <= residual/min_{k != h}|lambda_k - rq|.
RayleighBounds rayleigh_bounds_hermitian(const TriToeplitz& T, const Vector& x_eps,
                                         Index h);

}  // namespace tritospec::conditioning
