#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tritospec/spectra.hpp"
#include "tritospec/types.hpp"

namespace tritospec::apps {

/// Frobenius projection of a tridiagonal matrix onto the tridiagonal
/// Toeplitz subspace: band means.
TriToeplitz nearest_toeplitz(const TridiagonalMatrix& A);

double distance_to(const TridiagonalMatrix& A, const TriToeplitz& T);

struct TracelessReport {
    bool singular;
    std::optional<double> kappa2;  // n even, nonzero coupling
};

/// Spectrum of a traceless real symmetric member: singular for odd n,
/// kappa_2 = cos(pi/(n+1)) / cos(n pi / (2(n+1))) for even n.
TracelessReport traceless_analysis(const TriToeplitz& T);

struct HoffmanWielandt {
    double lhs;  // mean squared distance of the sorted spectra
    double rhs;  // ||A - T||_F^2 / n
};

/// Eigenvalue-distance bound against the nearest Toeplitz member (first
/// form) or against an explicitly supplied reference member (second form).
HoffmanWielandt hoffman_wielandt_check(const TridiagonalMatrix& A);
HoffmanWielandt hoffman_wielandt_check(const TridiagonalMatrix& A,
                                       const TriToeplitz& reference);

/// mean(diag) > 2 mean(sub) cos(pi/(n+1)): positive definiteness of the
/// projection of a real symmetric tridiagonal matrix.
bool positive_definite_projection_check(const TridiagonalMatrix& A);

struct ProjectionReport {
    TriToeplitz nearest;
    double distance;
    double hw_lhs, hw_rhs;
    bool traceless;
    std::optional<double> kappa2;
    bool positive_definite;
};

ProjectionReport project_report(const TridiagonalMatrix& A);

struct RefineContext {
    TriToeplitz nearest;
    spectra::SpectralFactorization factor;
    Matrix B;  // X^{-1} A X, formed through the analytic inverse
    std::vector<std::string> warnings;
};

RefineContext prepare_refinement(const TridiagonalMatrix& A);

struct RefinedFactorization {
    Vector values;
    Matrix vectors;   // Z = X Y
    double residual;  // max_h ||A z_h - d_h z_h|| / ||z_h||
    std::vector<std::string> warnings;
};

/// Spectral factorization of a near-Toeplitz tridiagonal matrix through the
/// closed-form factorization of its nearest Toeplitz member.
RefinedFactorization refine_spectral_factorization(const TridiagonalMatrix& A);

/// Max pairwise difference after sorting both spectra by (Re, Im) descending.
double accuracy_report(const Vector& computed, const Vector& exact);

}  // namespace tritospec::apps
