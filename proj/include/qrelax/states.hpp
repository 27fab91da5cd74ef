// states.hpp — the state family: maximally mixed state, pseudo-pure states,
// deviation matrices, and the high-temperature equilibrium state of a spin I.

#pragma once

#include "qrelax/linalg.hpp"

namespace qrelax::states {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

// Spin quantum number is stored doubled, so spin 3/2 is twice_spin = 3 and
// the Hilbert dimension N = twice_spin + 1 stays exact.
struct SpinSystem {
    int twice_spin = 3;
    double epsilon = 1e-5;  // dimensionless polarization parameter

    int dim() const { return twice_spin + 1; }
    double spin() const { return 0.5 * twice_spin; }
    // equilibrium polarization 2*I*epsilon
    double max_polarization() const { return twice_spin * epsilon; }
};

// Validates 0 < epsilon < 1 and twice_spin >= 1.
SpinSystem make_spin_system(int twice_spin, double epsilon);

struct PureKet {
    Vector amps;
};

// Throws InvalidKet unless the amplitudes have unit norm within 1e-12.
PureKet make_ket(Vector amps);
PureKet basis_ket(int dim, int index);
// (|0> + |dim-1>)/sqrt(2)
PureKet cat_ket(int dim);

// Hermitian, unit trace, positive semidefinite.
struct DensityMatrix {
    Matrix mat;
};
DensityMatrix make_density(Matrix m);

// Hermitian, traceless: the NMR-observable part of a state.
struct DeviationMatrix {
    Matrix mat;
};
DeviationMatrix make_deviation(Matrix m);

// 1/N
Matrix maximally_mixed(int dim);

// (1 - eps) * 1/N + eps * |psi><psi|
DensityMatrix make_pps(const SpinSystem& sys, const PureKet& psi);

// sigma_0 = eps * (|psi><psi| - 1/N)
DeviationMatrix initial_deviation(const SpinSystem& sys, const PureKet& psi);

// rho_z = I_z/(N*I) + 1/N, diagonal; spin 3/2 gives diag(1/2, 1/3, 1/6, 0)
DensityMatrix equilibrium_state(const SpinSystem& sys);

// sigma_inf = 2*I*eps * (rho_z - 1/N)
DeviationMatrix equilibrium_deviation(const SpinSystem& sys);

}  // namespace qrelax::states
