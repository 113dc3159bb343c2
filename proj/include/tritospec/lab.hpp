#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tritospec/numeric.hpp"
#include "tritospec/types.hpp"

namespace tritospec::lab {

enum class SampleSpace { General, Toeplitz, SymmetricToeplitz, SkewToeplitz };

const char* sample_space_name(SampleSpace s);
SampleSpace sample_space_from_name(const std::string& name);

/// Unit-Frobenius random perturbation direction; structured tags are drawn in
/// parameter space and embedded, so membership is exact. Deterministic per seed.
struct PerturbationSample {
    Matrix E;
    SampleSpace subspace;
    std::uint64_t seed;
};

PerturbationSample sample_perturbation(Index n, SampleSpace s, std::uint64_t seed);

/// Greedy maximum-overlap pairing between the columns of two decompositions;
/// entry h is the column of F_eps continuing eigenvector h of F.
/// AmbiguousMatch when any chosen overlap drops below 1/sqrt(2).
std::vector<Index> match_continuation(const numeric::EigenDecomposition& F,
                                      const numeric::EigenDecomposition& F_eps);

struct BoundCheck {
    Index h;
    double measured;
    double bound;
    bool pass;  // measured <= bound * (1 + 1e-9)
};

/// sin(theta) between eigenvector h of the family member and its continuation
/// under A + eps E, checked against kappa(x_h) * eps.
BoundCheck verify_sin_theta(const TriToeplitz& T, const Matrix& E, double eps,
                            Index h);
BoundCheck verify_sin_theta(const TriToeplitz& T, ToeplitzTypeCase c,
                            const Matrix& E, double eps, Index h);
std::vector<BoundCheck> verify_sin_theta_all(const TriToeplitz& T, const Matrix& E,
                                             double eps);
std::vector<BoundCheck> verify_sin_theta_all(const TriToeplitz& T,
                                             ToeplitzTypeCase c, const Matrix& E,
                                             double eps);

/// |lambda_h(T + tE) - lambda_h(T)| / t by the dense eigensolver with
/// nearest-eigenvalue continuation.
double fd_eigenvalue_slope(const TriToeplitz& T, const Matrix& E, Index h, double t);
double fd_eigenvalue_slope(const TriToeplitz& T, const Matrix& E, Index h);

/// Deterministic Gaussian source used by the sampling routines (and tests);
/// the Box-Muller transform keeps streams identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform();   // [0, 1)
    double gaussian();  // standard normal
    Complex cgaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tritospec::lab
