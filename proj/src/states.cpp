#include "qrelax/states.hpp"

#include "qrelax/errors.hpp"

#include <cmath>

namespace qrelax::states {

SpinSystem make_spin_system(int twice_spin, double epsilon) {
    if (twice_spin < 1) throw Error("SpinSystem: twice_spin must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("SpinSystem: epsilon must lie in (0, 1)");
    return SpinSystem{twice_spin, epsilon};
}

PureKet make_ket(Vector amps) {
    if (amps.size() == 0) throw InvalidKet("ket must be non-empty");
    if (!linalg::all_finite(amps)) throw InvalidKet("ket has non-finite amplitudes");
    if (std::abs(amps.norm() - 1.0) > 1e-12) throw InvalidKet("ket is not normalized");
    return PureKet{std::move(amps)};
}

PureKet basis_ket(int dim, int index) {
    if (index < 0 || index >= dim) throw InvalidKet("basis index out of range");
    Vector v = Vector::Zero(dim);
    v[index] = 1.0;
    return PureKet{std::move(v)};
}

PureKet cat_ket(int dim) {
    Vector v = Vector::Zero(dim);
    v[0] = 1.0 / std::sqrt(2.0);
    v[dim - 1] = v[0];
    return PureKet{std::move(v)};
}

DensityMatrix make_density(Matrix m) {
    if (!linalg::is_hermitian(m)) throw NonHermitianInput("density matrix must be Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12)
        throw InvalidState("density matrix must have unit trace");
    if (!linalg::is_psd(m, 1e-10)) throw NotPSD("density matrix must be positive semidefinite");
    return DensityMatrix{std::move(m)};
}

DeviationMatrix make_deviation(Matrix m) {
    if (!linalg::is_hermitian(m)) throw NonHermitianInput("deviation matrix must be Hermitian");
    if (std::abs(m.trace()) > 1e-12) throw InvalidState("deviation matrix must be traceless");
    return DeviationMatrix{std::move(m)};
}

Matrix maximally_mixed(int dim) {
    return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

DensityMatrix make_pps(const SpinSystem& sys, const PureKet& psi) {
    if (psi.amps.size() != sys.dim()) throw InvalidKet("ket dimension does not match spin system");
    Matrix m = (1.0 - sys.epsilon) * maximally_mixed(sys.dim()) +
               sys.epsilon * linalg::projector(psi.amps);
    return make_density(std::move(m));
}

DeviationMatrix initial_deviation(const SpinSystem& sys, const PureKet& psi) {
    if (psi.amps.size() != sys.dim()) throw InvalidKet("ket dimension does not match spin system");
    Matrix m = sys.epsilon * (linalg::projector(psi.amps) - maximally_mixed(sys.dim()));
    return make_deviation(std::move(m));
}

DensityMatrix equilibrium_state(const SpinSystem& sys) {
    const int n = sys.dim();
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double iz = 0.5 * (sys.twice_spin - 2 * k);  // I, I-1, ..., -I
        m(k, k) = iz / (n * sys.spin()) + 1.0 / n;
    }
    return make_density(std::move(m));
}

DeviationMatrix equilibrium_deviation(const SpinSystem& sys) {
    Matrix m = sys.max_polarization() * (equilibrium_state(sys).mat - maximally_mixed(sys.dim()));
    return make_deviation(std::move(m));
}

}  // namespace qrelax::states
