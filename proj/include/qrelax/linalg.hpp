// linalg.hpp — dense complex matrix helpers and a cyclic Jacobi Hermitian
// eigensolver, sized for the tiny dimensions used here (N <= 8).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qrelax::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Absolute tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

bool all_finite(const Matrix& m);
double max_abs(const Matrix& m);

// max |m - m^dagger| over entries
double hermiticity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// (m + m^dagger)/2
Matrix symmetrized(const Matrix& m);

// |ket><ket|
Matrix projector(const Vector& ket);

struct EigenSystem {
    Eigen::VectorXd values;  // sorted descending
    Matrix vectors;          // columns, matching `values`
};

// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Convergence: off-diagonal Frobenius mass < 1e-14, hard cap 200 sweeps.
// Throws NonHermitianInput if the input fails the Hermiticity tolerance,
// NoConvergence if the sweep budget is exhausted or the reconstruction
// residual exceeds 1e-10 (max-entry norm).
EigenSystem hermitian_eigensystem(const Matrix& m);

// Eigenvalues only, sorted descending.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& m);

// true iff the minimal eigenvalue is >= -tol
bool is_psd(const Matrix& m, double tol);

}  // namespace qrelax::linalg
