#include "qrelax/redfield.hpp"

#include "qrelax/errors.hpp"

#include <cmath>

namespace qrelax::redfield {

void validate(const RelaxationTimes& taus) {
    for (double v : {taus.tau01, taus.tau02, taus.tau12, taus.tau1, taus.tau2})
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error("RelaxationTimes: all five characteristic times must be positive and finite");
}

DeltaMatrix make_delta(Matrix m) {
    if (m.rows() != 4 || m.cols() != 4) throw DimensionMismatch("DeltaMatrix must be 4x4");
    if (!linalg::is_hermitian(m)) throw NonHermitianInput("DeltaMatrix must be Hermitian");
    if (std::abs(m.trace()) > 1e-12) throw InvalidState("DeltaMatrix must be traceless");
    return DeltaMatrix{std::move(m)};
}

DeltaMatrix propagate_delta(const DeltaMatrix& d0, double t_ms, const RelaxationTimes& taus) {
    validate(taus);
    if (t_ms < 0.0) throw NegativeTime("propagate_delta: t must be >= 0");

    const Matrix& s = d0.mat;
    const double e1 = std::exp(-t_ms / taus.tau1);
    const double e2 = std::exp(-t_ms / taus.tau2);
    const double e12 = std::exp(-2.0 * t_ms / taus.tau12);
    const double ec = std::exp(-t_ms / taus.tau12);
    const double env01 = std::exp(-t_ms / taus.tau01);
    const double env02 = std::exp(-t_ms / taus.tau02);

    Matrix d = Matrix::Zero(4, 4);
    d(1, 2) = ec * s(1, 2);
    d(0, 3) = ec * s(0, 3);
    d(0, 1) = env01 * (0.5 * (1.0 + e2) * s(0, 1) + 0.5 * (1.0 - e2) * s(2, 3));
    d(2, 3) = env01 * (0.5 * (1.0 - e2) * s(0, 1) + 0.5 * (1.0 + e2) * s(2, 3));
    d(0, 2) = env02 * (0.5 * (1.0 + e1) * s(0, 2) + 0.5 * (1.0 - e1) * s(1, 3));
    d(1, 3) = env02 * (0.5 * (1.0 - e1) * s(0, 2) + 0.5 * (1.0 + e1) * s(1, 3));

    const linalg::Complex a = s(0, 0), b = s(1, 1), c = s(2, 2);
    d(0, 0) = 0.5 * ((e2 + e1) * a + (-e12 + e2) * b + (-e12 + e1) * c);
    d(1, 1) = 0.5 * ((e2 - e1) * a + (e12 + e2) * b + (e12 - e1) * c);
    d(2, 2) = 0.5 * ((-e2 + e1) * a + (e12 - e2) * b + (e12 + e1) * c);
    d(3, 3) = -0.5 * ((e2 + e1) * a + (e12 + e2) * b + (e12 + e1) * c);

    // The 33 population has its own closed form; it must agree with the trace
    // closure of the other three.
    if (std::abs(d(3, 3) + d(0, 0) + d(1, 1) + d(2, 2)) > 1e-12)
        throw Error("propagate_delta: population closure check failed");

    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d(j, i) = std::conj(d(i, j));
    return DeltaMatrix{std::move(d)};
}

states::DeviationMatrix evolve_sigma(const states::DeviationMatrix& sigma0,
                                     const states::DeviationMatrix& sigma_inf,
                                     double t_ms,
                                     const RelaxationTimes& taus) {
    const DeltaMatrix d0 = make_delta(sigma0.mat - sigma_inf.mat);
    const DeltaMatrix dt = propagate_delta(d0, t_ms, taus);
    return states::make_deviation(sigma_inf.mat + dt.mat);
}

}  // namespace qrelax::redfield
