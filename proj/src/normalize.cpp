#include "qrelax/normalize.hpp"

#include "qrelax/errors.hpp"

#include <cmath>
#include <iostream>

namespace qrelax::normalize {

namespace {

FlaggedMatrix flagged(Matrix m) {
    const bool valid = linalg::is_psd(m, 1e-10);
    return FlaggedMatrix{std::move(m), valid};
}

}  // namespace

FlaggedMatrix fixed_normalize_initial(const DeviationMatrix& sigma, double epsilon) {
    if (!(epsilon > 0.0)) throw Error("fixed_normalize_initial: epsilon must be > 0");
    const int n = static_cast<int>(sigma.mat.rows());
    return flagged(sigma.mat / epsilon + states::maximally_mixed(n));
}

FlaggedMatrix fixed_normalize_equilibrium(const DeviationMatrix& sigma, double epsilon,
                                          int twice_spin) {
    if (!(epsilon > 0.0)) throw Error("fixed_normalize_equilibrium: epsilon must be > 0");
    if (twice_spin < 1) throw Error("fixed_normalize_equilibrium: twice_spin must be >= 1");
    const double eps_prime = twice_spin * epsilon;  // 2*I*eps
    const int n = static_cast<int>(sigma.mat.rows());
    return flagged(sigma.mat / eps_prime + states::maximally_mixed(n));
}

double find_alpha(const DeviationMatrix& sigma, const SpinSystem& sys) {
    if (linalg::max_abs(sigma.mat) < 1e-18)
        throw DegenerateSigma("find_alpha: sigma carries no polarization");
    const double lambda_min = linalg::min_eigenvalue(sigma.mat);
    if (!(lambda_min < 0.0))
        throw DegenerateSigma("find_alpha: sigma has no negative eigenvalue");
    const double alpha = -static_cast<double>(sigma.mat.rows()) * lambda_min;
    const double limit = sys.max_polarization();
    if (alpha > limit * (1.0 + 1e-9))
        std::cerr << "warning: find_alpha: alpha = " << alpha
                  << " exceeds the equilibrium polarization " << limit << "\n";
    return alpha;
}

DensityMatrix normalize_time_dependent(const DeviationMatrix& sigma, const DeviationMatrix& sigma0,
                                       const PureKet& psi, const SpinSystem& sys, double alpha) {
    if (!(alpha > 0.0)) throw InvalidAlpha("normalize_time_dependent: alpha must be > 0");
    const Matrix rho_i = states::maximally_mixed(sys.dim());
    const double ratio = sys.epsilon / alpha;
    Matrix rho = ratio * linalg::projector(psi.amps) + (sigma.mat - sigma0.mat) / alpha +
                 (1.0 - ratio) * rho_i;

    // sigma_0 = eps(|psi><psi| - 1/N) makes this identical to 1/N + sigma/alpha;
    // a violation means the caller handed in a mismatched sigma_0/psi pair.
    const Matrix direct = rho_i + sigma.mat / alpha;
    if (linalg::max_abs(rho - direct) > 1e-14)
        throw InvalidState("normalize_time_dependent: sigma_0 does not belong to psi");

    if (!linalg::is_psd(rho, 1e-10))
        throw NotPSD("normalize_time_dependent: alpha too small, result not PSD");
    return states::make_density(std::move(rho));
}

AlphaSample alpha_normalize(const DeviationMatrix& sigma, const SpinSystem& sys, double t_ms) {
    const double alpha = find_alpha(sigma, sys);
    Matrix rho = states::maximally_mixed(sys.dim()) + sigma.mat / alpha;
    if (!linalg::is_psd(rho, 1e-10))
        throw NotPSD("alpha_normalize: result not PSD");
    return AlphaSample{t_ms, alpha, states::make_density(std::move(rho))};
}

}  // namespace qrelax::normalize
