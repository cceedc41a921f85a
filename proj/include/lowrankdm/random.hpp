#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "lowrankdm/spectra.hpp"

namespace lowrankdm {

/// SplitMix64: tiny, fully portable generator so seeded runs reproduce
/// bit-for-bit on every platform (the standard distributions do not promise
/// that).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1).
double uniform_double(SplitMix64& rng) noexcept;

/// Standard normal via Box-Muller on SplitMix64 output.
double gaussian(SplitMix64& rng) noexcept;

/// Matrix with independent standard complex Gaussian entries.
Eigen::MatrixXcd random_ginibre(int rows, int cols, SplitMix64& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Eigen::MatrixXcd random_unitary(int n, SplitMix64& rng);

/// Random Hermitian matrix (G + G^dagger)/2 with Ginibre G.
Eigen::MatrixXcd random_hermitian(int n, SplitMix64& rng);

/// Random point on the probability simplex (uniform / Dirichlet(1,...,1)).
Eigen::VectorXd random_simplex(int n, SplitMix64& rng);

/// Full-rank random state G G^dagger / trace(G G^dagger).
DensityMatrix random_density_matrix(int n, SplitMix64& rng, const Tolerances& tols = {});

/// Random state of rank <= rank_bound: an orthonormal frame from QR of a
/// Ginibre block carrying random simplex weights.
DensityMatrix random_low_rank_state(int n, int rank_bound, SplitMix64& rng,
                                    const Tolerances& tols = {});

} // namespace lowrankdm
