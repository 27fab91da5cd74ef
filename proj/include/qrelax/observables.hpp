// observables.hpp — quantum-information observables on normalized states:
// two-qubit concurrence (general and X-state closed form), discrete
// phase-space point operators, Wigner grids, and momentum marginals.

#pragma once

#include "qrelax/states.hpp"

#include <utility>
#include <vector>

namespace qrelax::observables {

using linalg::Complex;
using linalg::Matrix;
using states::DensityMatrix;

// Diagonal + anti-diagonal layout:
//   [ a        w ]
//   [    b  z    ]
//   [    z* c    ]
//   [ w*       d ]
struct XStateView {
    double a = 0, b = 0, c = 0, d = 0;
    Complex w, z;
};

// Throws NotXState when any off-pattern entry exceeds 1e-9 relative to the
// largest entry magnitude.
XStateView extract_xstate(const Matrix& rho);

// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy),
// evaluated on the Hermitian similar form sqrt(rho) S rho* S sqrt(rho).
// Eigenvalues are clipped at -1e-12 before the square roots.
double concurrence_general(const DensityMatrix& rho);

// Closed form 2 * max{0, |z| - sqrt(a d), |w| - sqrt(b c)}.
double concurrence_xstate(const XStateView& x);

// Per-sample concurrence of a time series of valid density matrices.
std::vector<std::pair<double, double>> concurrence_trajectory(
    const std::vector<std::pair<double, DensityMatrix>>& samples);

// The 2N x 2N family of Hermitian phase-space point operators for Hilbert
// dimension N (N even). A(q,p) = (1/2N) U^q R V^-p exp(i pi q p / N) on the
// fundamental subgrid, extended by the sign-periodicity identity, where U is
// the cyclic shift, V its discrete-Fourier conjugate (kernel exp(+2 pi i jk/N))
// and R the reflection |q> -> |N - q mod N>. For N = 4 the construction is
// checked against hard-coded closed forms and fails loudly on any mismatch.
struct PhasePointGrid {
    int dim = 0;                       // Hilbert dimension N
    std::vector<Matrix> ops;           // (2N)^2 operators, index q*(2N)+p
    const Matrix& at(int q, int p) const;
    int grid_size() const { return 2 * dim; }
};

PhasePointGrid build_phase_point_grid(int dim);

// Real-valued quasi-probability grid W(q,p) = Tr[rho A(q,p)].
struct WignerGrid {
    int dim = 0;                 // Hilbert dimension N
    Eigen::MatrixXd values;      // (2N) x (2N), row q, column p
};

WignerGrid wigner(const DensityMatrix& rho, const PhasePointGrid& grid);

// M(p) = sum_q W(q,p). Sums to 1 over the full grid; the identity is asserted
// at 1e-9.
std::vector<double> momentum_marginal(const WignerGrid& w);

}  // namespace qrelax::observables
