#include "lowrankdm/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lowrankdm/errors.hpp"

namespace lowrankdm {

double uniform_double(SplitMix64& rng) noexcept {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

double gaussian(SplitMix64& rng) noexcept {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u = 1.0 - uniform_double(rng);
    const double v = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Eigen::MatrixXcd random_ginibre(int rows, int cols, SplitMix64& rng) {
    Eigen::MatrixXcd g(rows, cols);
    const double scale = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            g(i, j) = scale * std::complex<double>(gaussian(rng), gaussian(rng));
        }
    }
    return g;
}

Eigen::MatrixXcd random_unitary(int n, SplitMix64& rng) {
    const Eigen::MatrixXcd g = random_ginibre(n, n, rng);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar rather than QR-biased.
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : 1.0;
    }
    return q;
}

Eigen::MatrixXcd random_hermitian(int n, SplitMix64& rng) {
    const Eigen::MatrixXcd g = random_ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

Eigen::VectorXd random_simplex(int n, SplitMix64& rng) {
    Eigen::VectorXd exps(n);
    for (int i = 0; i < n; ++i) {
        exps(i) = -std::log(1.0 - uniform_double(rng));
    }
    return exps / exps.sum();
}

DensityMatrix random_density_matrix(int n, SplitMix64& rng, const Tolerances& tols) {
    const Eigen::MatrixXcd g = random_ginibre(n, n, rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityMatrix::validate(rho, tols);
}

DensityMatrix random_low_rank_state(int n, int rank_bound, SplitMix64& rng,
                                    const Tolerances& tols) {
    if (rank_bound < 1 || rank_bound > n) {
        std::ostringstream msg;
        msg << "rank bound " << rank_bound << " outside [1, " << n << "]";
        throw Error(ErrorKind::bad_rank, msg.str());
    }
    const Eigen::MatrixXcd g = random_ginibre(n, rank_bound, rng);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd frame =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, rank_bound);
    const Eigen::VectorXd weights = random_simplex(rank_bound, rng);
    Eigen::MatrixXcd rho = frame * weights.asDiagonal() * frame.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix::validate(rho, tols);
}

} // namespace lowrankdm
