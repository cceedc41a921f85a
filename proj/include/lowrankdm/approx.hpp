#pragma once

#include <Eigen/Dense>

#include "lowrankdm/norms.hpp"
#include "lowrankdm/spectra.hpp"

namespace lowrankdm {

/// Result of projecting a state onto the rank-<= k states.
struct ApproxResult {
    int rank_bound = 0;            ///< k
    double gamma = 0.0;            ///< uniform shift added to the kept eigenvalues
    DensityMatrix approximation;   ///< closest rank-<= k state (same eigenbasis as the input)
    double distance = 0.0;         ///< distance in the requested norm
    Eigen::VectorXd residual_spectrum; ///< k copies of -gamma followed by the tail eigenvalues
};

/// gamma = (sum of eigenvalues below position k) / k. Eigenvalues must be
/// descending with total 1 (checked loosely); 1 <= rank_bound <= n or
/// Error(bad_rank). rank_bound = n gives exactly 0.
double gamma_shift(const Eigen::VectorXd& eigenvalues, int rank_bound);

/// Closest rank-<= k state to `state`: keep the k leading eigenpairs, add
/// gamma to each kept eigenvalue, zero the rest. The minimizer is the same
/// for every norm spec; only the reported distance depends on it.
/// rank_bound = n returns the input unchanged with distance 0 (no
/// decomposition is performed).
ApproxResult closest_rank_k(const DensityMatrix& state, int rank_bound, const NormSpec& spec,
                            const Tolerances& tols = {});

/// Distance from a state with the given descending eigenvalues to the
/// rank-<= k states, computed from the residual spectrum alone:
/// the norm of diag(-gamma, ..., -gamma, tail).
double distance_to_low_rank(const Eigen::VectorXd& eigenvalues, int rank_bound,
                            const NormSpec& spec);

} // namespace lowrankdm
