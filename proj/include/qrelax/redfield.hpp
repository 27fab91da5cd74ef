// redfield.hpp — closed-form propagator for pure quadrupolar relaxation of a
// spin-3/2 deviation matrix. Works on Delta = sigma - sigma_inf, whose entries
// evolve by fixed exponential mixing laws with five characteristic times.

#pragma once

#include "qrelax/states.hpp"

namespace qrelax::redfield {

using linalg::Matrix;

// Characteristic times, milliseconds, all strictly positive.
// tau01/tau02 damp the (01,23) and (02,13) coherence pairs, tau12 damps the
// 12 and 03 coherences, tau1/tau2 drive the population mixing.
struct RelaxationTimes {
    double tau01 = 0;
    double tau02 = 0;
    double tau12 = 0;
    double tau1 = 0;
    double tau2 = 0;
};

void validate(const RelaxationTimes& taus);

// Hermitian traceless difference sigma - sigma_inf, dimension 4.
struct DeltaMatrix {
    Matrix mat;
};
DeltaMatrix make_delta(Matrix m);

// Evaluates the closed-form element-wise laws at time t (ms):
//   - single exponentials for the 12 and 03 entries (rate 1/tau12)
//   - 2x2 mixing of (01,23) under envelope exp(-t/tau01), mixing exp(-t/tau2)
//   - 2x2 mixing of (02,13) under envelope exp(-t/tau02), mixing exp(-t/tau1)
//   - 3x3 mixing of the (00,11,22) populations with modes exp(-t/tau1),
//     exp(-t/tau2), exp(-2t/tau12); the 33 entry has its own closed form and
//     is cross-checked against -(d00+d11+d22) at tolerance 1e-12
// Lower-triangle entries follow by Hermiticity. Throws NegativeTime for t < 0.
DeltaMatrix propagate_delta(const DeltaMatrix& d0, double t_ms, const RelaxationTimes& taus);

// sigma(t) = sigma_inf + propagate_delta(sigma_0 - sigma_inf, t)
states::DeviationMatrix evolve_sigma(const states::DeviationMatrix& sigma0,
                                     const states::DeviationMatrix& sigma_inf,
                                     double t_ms,
                                     const RelaxationTimes& taus);

}  // namespace qrelax::redfield
