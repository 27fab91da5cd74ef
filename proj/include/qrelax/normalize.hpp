// normalize.hpp — recover a valid density matrix from a deviation matrix.
// The fixed normalizations (by eps and by 2*I*eps) are kept for comparison:
// they produce invalid matrices away from their anchor point, which is why the
// time-dependent polarization alpha exists.

#pragma once

#include "qrelax/states.hpp"

namespace qrelax::normalize {

using linalg::Matrix;
using states::DensityMatrix;
using states::DeviationMatrix;
using states::PureKet;
using states::SpinSystem;

// A Hermitian matrix with unit trace that may fail positivity; `valid` records
// whether it passes the density-matrix test (PSD within 1e-10).
struct FlaggedMatrix {
    Matrix mat;
    bool valid = false;
};

// sigma/eps + 1/N: exact at t = 0, develops negative populations later.
FlaggedMatrix fixed_normalize_initial(const DeviationMatrix& sigma, double epsilon);

// sigma/(2*I*eps) + 1/N: valid at equilibrium, wrong populations at t = 0.
FlaggedMatrix fixed_normalize_equilibrium(const DeviationMatrix& sigma, double epsilon,
                                          int twice_spin);

// Smallest alpha > 0 such that 1/N + sigma/alpha is positive semidefinite,
// i.e. alpha = -N * lambda_min(sigma). Throws DegenerateSigma when sigma
// carries no polarization (max entry below 1e-18, or no negative eigenvalue).
// Warns on stderr if alpha exceeds the equilibrium polarization 2*I*eps by
// more than 1e-9 relative.
double find_alpha(const DeviationMatrix& sigma, const SpinSystem& sys);

// rho_alpha = (eps/alpha)|psi><psi| + (sigma - sigma_0)/alpha + (1 - eps/alpha)/N.
// Algebraically identical to 1/N + sigma/alpha; the identity is asserted at
// 1e-14 as a self-check of the inputs. Throws InvalidAlpha for alpha <= 0 and
// NotPSD when alpha is too small to produce a positive matrix.
DensityMatrix normalize_time_dependent(const DeviationMatrix& sigma, const DeviationMatrix& sigma0,
                                       const PureKet& psi, const SpinSystem& sys, double alpha);

struct AlphaSample {
    double t_ms = 0;
    double alpha = 0;
    DensityMatrix rho_alpha;
};

// find_alpha + direct normalization 1/N + sigma/alpha, for deviation matrices
// whose preparation ket is unknown (e.g. ingested measurement series).
AlphaSample alpha_normalize(const DeviationMatrix& sigma, const SpinSystem& sys, double t_ms = 0);

}  // namespace qrelax::normalize
