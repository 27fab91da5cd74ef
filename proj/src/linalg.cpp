#include "qrelax/linalg.hpp"

#include "qrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrelax::linalg {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) v = std::max(v, std::abs(m(i, j)));
    return v;
}

double hermiticity_defect(const Matrix& m) {
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && all_finite(m) && hermiticity_defect(m) <= tol;
}

Matrix symmetrized(const Matrix& m) {
    return 0.5 * (m + m.adjoint());
}

Matrix projector(const Vector& ket) {
    return ket * ket.adjoint();
}

namespace {

double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index p = 0; p < a.rows(); ++p)
        for (Eigen::Index q = p + 1; q < a.cols(); ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
}

void check_input(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw NonHermitianInput("hermitian_eigensystem: matrix must be square and non-empty");
    if (!all_finite(m)) throw NonHermitianInput("hermitian_eigensystem: non-finite entries");
    if (hermiticity_defect(m) > kHermitianTol)
        throw NonHermitianInput("hermitian_eigensystem: input exceeds Hermiticity tolerance");
}

}  // namespace

EigenSystem hermitian_eigensystem(const Matrix& m) {
    check_input(m);
    const Eigen::Index n = m.rows();
    Matrix a = symmetrized(m);  // removes the sub-tolerance asymmetry
    Matrix v = Matrix::Identity(n, n);

    constexpr int kMaxSweeps = 200;
    constexpr double kOffTol = 1e-14;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const bool below_threshold = offdiag_frobenius(a) < kOffTol;
        if (below_threshold && converged) break;
        // one polishing sweep after crossing the threshold: quadratic
        // convergence pushes the off-diagonal mass to the roundoff floor,
        // which matters for eigenvalues that are exactly zero
        converged = below_threshold;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double h = std::abs(a(p, q));
                if (h == 0.0) continue;
                // Phase rotation makes the (p,q) pivot real, then a classic
                // 2x2 Jacobi rotation annihilates it.
                const Complex phase = a(p, q) / h;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * h);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Q = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on rows/cols (p,q)
                const Complex qpp = c, qpq = s;
                const Complex qqp = -s * std::conj(phase), qqq = c * std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {  // A <- A Q
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * qpp + akq * qqp;
                    a(k, q) = akp * qpq + akq * qqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {  // A <- Q^dagger A
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(qpp) * apk + std::conj(qqp) * aqk;
                    a(q, k) = std::conj(qpq) * apk + std::conj(qqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {  // V <- V Q
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * qpp + vkq * qqp;
                    v(k, q) = vkp * qpq + vkq * qqq;
                }
            }
        }
        if (converged) break;
    }
    if (!converged) throw NoConvergence("hermitian_eigensystem: sweep budget exhausted");

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
        out.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
    }

    const Matrix reconstructed =
        out.vectors * out.values.asDiagonal().toDenseMatrix().cast<Complex>() * out.vectors.adjoint();
    if (max_abs(reconstructed - m) > 1e-10 * std::max(1.0, max_abs(m)))
        throw NoConvergence("hermitian_eigensystem: reconstruction residual too large");
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    const EigenSystem es = hermitian_eigensystem(m);
    return {es.values.data(), es.values.data() + es.values.size()};
}

double min_eigenvalue(const Matrix& m) {
    const std::vector<double> vals = hermitian_eigenvalues(m);
    return vals.back();
}

bool is_psd(const Matrix& m, double tol) {
    return min_eigenvalue(m) >= -tol;
}

}  // namespace qrelax::linalg
