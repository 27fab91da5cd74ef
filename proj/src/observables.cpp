#include "qrelax/observables.hpp"

#include "qrelax/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>

namespace qrelax::observables {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

// sigma_y x sigma_y under the two-qubit labeling of the four levels
const Matrix& spin_flip() {
    static const Matrix s = Eigen::kroneckerProduct(sigma_y(), sigma_y()).eval();
    return s;
}

Matrix hermitian_sqrt(const Matrix& m) {
    const linalg::EigenSystem es = linalg::hermitian_eigensystem(m);
    Eigen::VectorXd roots(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        if (es.values[i] < -1e-10)
            throw InvalidState("concurrence: state has a significant negative eigenvalue");
        roots[i] = std::sqrt(std::max(es.values[i], 0.0));
    }
    return es.vectors * roots.asDiagonal().toDenseMatrix().cast<Complex>() * es.vectors.adjoint();
}

// i^p, (-1)^p, (-i)^p without trig roundoff
Complex unit_power(int quarter_turns, int p) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((quarter_turns * p) % 4 + 4) % 4];
}

// Closed forms of the N = 4 operators on the fundamental q rows; used as a
// construction self-check so that any convention slip in U, V, R or the
// global phase fails the build of the grid instead of corrupting results.
Matrix reference_phase_point(int q, int p) {
    Matrix body = Matrix::Zero(4, 4);
    const Complex ip = unit_power(1, p);
    const Complex mp = unit_power(2, p);
    const Complex mip = unit_power(3, p);
    switch (q) {
        case 0:
            body(0, 0) = 1;
            body(1, 3) = ip;
            body(2, 2) = mp;
            body(3, 1) = mip;
            break;
        case 1:
            body(0, 1) = 1;
            body(1, 0) = ip;
            body(2, 3) = mp;
            body(3, 2) = mip;
            break;
        case 2:
            body(0, 2) = 1;
            body(1, 1) = ip;
            body(2, 0) = mp;
            body(3, 3) = mip;
            break;
        case 3:
            body(0, 3) = 1;
            body(1, 2) = ip;
            body(2, 1) = mp;
            body(3, 0) = mip;
            break;
        default:
            throw UnsupportedDimension("reference_phase_point: q out of range");
    }
    return std::polar(1.0, -kPi * q * p / 4.0) / 8.0 * body;
}

}  // namespace

XStateView extract_xstate(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw DimensionMismatch("X-state view needs 4x4");
    const double thr = 1e-9 * linalg::max_abs(rho);
    static constexpr int off_pattern[8][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                              {1, 3}, {2, 3}, {3, 1}, {3, 2}};
    for (const auto& idx : off_pattern)
        if (std::abs(rho(idx[0], idx[1])) >= thr)
            throw NotXState("matrix has non-X entries above threshold");
    XStateView x;
    x.a = rho(0, 0).real();
    x.b = rho(1, 1).real();
    x.c = rho(2, 2).real();
    x.d = rho(3, 3).real();
    x.w = rho(0, 3);
    x.z = rho(1, 2);
    return x;
}

double concurrence_general(const DensityMatrix& rho) {
    if (rho.mat.rows() != 4 || rho.mat.cols() != 4)
        throw InvalidState("concurrence_general: needs a 4x4 density matrix");
    const Matrix& s = spin_flip();
    const Matrix root = hermitian_sqrt(rho.mat);
    // Hermitian similar form of rho S rho* S: same spectrum, stays in the
    // Hermitian eigensolver's domain.
    const Matrix m = root * s * rho.mat.conjugate() * s * root;
    std::vector<double> vals = linalg::hermitian_eigenvalues(linalg::symmetrized(m));
    double c = 0.0;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] < -1e-12)
            throw InvalidState("concurrence_general: spectrum has a significant negative value");
        const double r = std::sqrt(std::max(vals[i], 0.0));
        c += (i == 0) ? r : -r;
    }
    return std::max(0.0, c);
}

double concurrence_xstate(const XStateView& x) {
    const double ad = std::max(x.a, 0.0) * std::max(x.d, 0.0);
    const double bc = std::max(x.b, 0.0) * std::max(x.c, 0.0);
    const double c1 = std::abs(x.z) - std::sqrt(ad);
    const double c2 = std::abs(x.w) - std::sqrt(bc);
    return 2.0 * std::max({0.0, c1, c2});
}

std::vector<std::pair<double, double>> concurrence_trajectory(
    const std::vector<std::pair<double, DensityMatrix>>& samples) {
    std::vector<std::pair<double, double>> out;
    out.reserve(samples.size());
    for (const auto& [t, rho] : samples) out.emplace_back(t, concurrence_general(rho));
    return out;
}

const Matrix& PhasePointGrid::at(int q, int p) const {
    const int g = grid_size();
    if (q < 0 || q >= g || p < 0 || p >= g)
        throw DimensionMismatch("PhasePointGrid::at: index out of range");
    return ops[static_cast<size_t>(q * g + p)];
}

PhasePointGrid build_phase_point_grid(int dim) {
    if (dim < 2 || dim % 2 != 0)
        throw UnsupportedDimension("build_phase_point_grid: dimension must be even and >= 2");
    const int n = dim;
    const int g = 2 * n;

    Matrix u = Matrix::Zero(n, n);  // cyclic shift |k> -> |k+1 mod N>
    for (int k = 0; k < n; ++k) u((k + 1) % n, k) = 1.0;
    Matrix r = Matrix::Zero(n, n);  // reflection |k> -> |N-k mod N>
    for (int k = 0; k < n; ++k) r((n - k) % n, k) = 1.0;
    Matrix f(n, n);  // discrete Fourier kernel exp(+2 pi i jk/N)/sqrt(N)
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * kPi * j * k / n);
    const Matrix v = f * u * f.adjoint();
    const Matrix vinv = v.adjoint();

    std::vector<Matrix> upow(static_cast<size_t>(n));
    std::vector<Matrix> vinvpow(static_cast<size_t>(g));
    upow[0] = Matrix::Identity(n, n);
    for (int q = 1; q < n; ++q) upow[q] = upow[q - 1] * u;
    vinvpow[0] = Matrix::Identity(n, n);
    for (int p = 1; p < g; ++p) vinvpow[p] = vinvpow[p - 1] * vinv;

    PhasePointGrid grid;
    grid.dim = n;
    grid.ops.resize(static_cast<size_t>(g) * g);
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < g; ++p)
            grid.ops[static_cast<size_t>(q * g + p)] =
                std::polar(1.0 / (2.0 * n), kPi * q * p / n) * (upow[q] * r * vinvpow[p]);
    // upper q rows follow from the sign-periodicity of the family
    for (int q = n; q < g; ++q)
        for (int p = 0; p < g; ++p)
            grid.ops[static_cast<size_t>(q * g + p)] =
                ((p % 2 == 0) ? 1.0 : -1.0) * grid.ops[static_cast<size_t>((q - n) * g + p)];

    for (const Matrix& a : grid.ops)
        if (linalg::hermiticity_defect(a) > 1e-12)
            throw Error("build_phase_point_grid: operator failed Hermiticity check");
    if (n == 4) {
        for (int q = 0; q < 4; ++q)
            for (int p = 0; p < g; ++p)
                if (linalg::max_abs(grid.at(q, p) - reference_phase_point(q, p)) > 1e-12)
                    throw Error("build_phase_point_grid: convention mismatch against closed forms");
    }
    return grid;
}

WignerGrid wigner(const DensityMatrix& rho, const PhasePointGrid& grid) {
    if (rho.mat.rows() != grid.dim)
        throw DimensionMismatch("wigner: state dimension does not match grid");
    const int g = grid.grid_size();
    WignerGrid w;
    w.dim = grid.dim;
    w.values.resize(g, g);
    for (int q = 0; q < g; ++q) {
        for (int p = 0; p < g; ++p) {
            const Complex val = (rho.mat * grid.at(q, p)).trace();
            if (std::abs(val.imag()) >= 1e-10)
                throw InvalidState("wigner: imaginary residue above tolerance");
            w.values(q, p) = val.real();
        }
    }
    return w;
}

std::vector<double> momentum_marginal(const WignerGrid& w) {
    const int g = 2 * w.dim;
    std::vector<double> m(static_cast<size_t>(g), 0.0);
    double total = 0.0;
    for (int p = 0; p < g; ++p) {
        for (int q = 0; q < g; ++q) m[static_cast<size_t>(p)] += w.values(q, p);
        total += m[static_cast<size_t>(p)];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw Error("momentum_marginal: grid normalization check failed");
    return m;
}

}  // namespace qrelax::observables
