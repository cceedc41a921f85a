#include "lowrankdm/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lowrankdm {

namespace {

void check_rank_bound(Eigen::Index n, int rank_bound) {
    if (rank_bound < 1 || rank_bound > n) {
        std::ostringstream msg;
        msg << "rank bound " << rank_bound << " outside [1, " << n << "]";
        throw Error(ErrorKind::bad_rank, msg.str());
    }
}

void check_unit_sum(const Eigen::VectorXd& eigenvalues) {
    const double total = eigenvalues.sum();
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "eigenvalues sum to " << total << ", expected 1";
        throw Error(ErrorKind::invalid_argument, msg.str());
    }
}

/// The residual eigenvalues of the projection: k copies of -gamma followed
/// by the discarded tail.
Eigen::VectorXd residual_of(const Eigen::VectorXd& eigenvalues, int rank_bound, double gamma) {
    const Eigen::Index n = eigenvalues.size();
    Eigen::VectorXd residual(n);
    residual.head(rank_bound).setConstant(-gamma);
    residual.tail(n - rank_bound) = eigenvalues.tail(n - rank_bound);
    return residual;
}

} // namespace

double gamma_shift(const Eigen::VectorXd& eigenvalues, int rank_bound) {
    check_rank_bound(eigenvalues.size(), rank_bound);
    check_unit_sum(eigenvalues);
    const Eigen::Index n = eigenvalues.size();
    if (rank_bound == n) {
        return 0.0;
    }
    return eigenvalues.tail(n - rank_bound).sum() / rank_bound;
}

double distance_to_low_rank(const Eigen::VectorXd& eigenvalues, int rank_bound,
                            const NormSpec& spec) {
    const double gamma = gamma_shift(eigenvalues, rank_bound);
    const Eigen::VectorXd residual = residual_of(eigenvalues, rank_bound, gamma);
    return norm_of_values(residual.cwiseAbs(), spec);
}

ApproxResult closest_rank_k(const DensityMatrix& state, int rank_bound, const NormSpec& spec,
                            const Tolerances& tols) {
    const Eigen::Index n = state.dim();
    check_rank_bound(n, rank_bound);

    if (rank_bound == n) {
        ApproxResult result{rank_bound, 0.0, state, 0.0, Eigen::VectorXd::Zero(n)};
        // Full rank allowed: the state is its own best approximation.
        result.distance = norm_of_values(result.residual_spectrum, spec); // validates spec vs n
        return result;
    }

    const Spectrum spectrum = spectral_decompose(state, tols);
    const double gamma = gamma_shift(spectrum.eigenvalues, rank_bound);

    const auto kept_vectors = spectrum.eigenvectors.leftCols(rank_bound);
    const Eigen::VectorXd kept_values =
        (spectrum.eigenvalues.head(rank_bound).array() + gamma).matrix();
    Eigen::MatrixXcd approx_mat =
        kept_vectors * kept_values.asDiagonal() * kept_vectors.adjoint();
    approx_mat = 0.5 * (approx_mat + approx_mat.adjoint().eval());

    const Eigen::VectorXd residual = residual_of(spectrum.eigenvalues, rank_bound, gamma);
    return ApproxResult{
        rank_bound,
        gamma,
        DensityMatrix::validate(approx_mat, tols),
        norm_of_values(residual.cwiseAbs(), spec),
        residual,
    };
}

} // namespace lowrankdm
