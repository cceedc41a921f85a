#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "lowrankdm/norms.hpp"
#include "lowrankdm/spectra.hpp"

namespace lowrankdm {

/// Budget and seeding for the independent numerical searches.
/// Restarts are independent; results are reduced deterministically (best
/// value, ties to the lower restart index), so outcomes do not depend on
/// scheduling. threads = 0 means hardware concurrency.
struct OracleConfig {
    int restarts = 32;
    int max_iters = 2000;          ///< simplex-search iterations per restart
    std::uint64_t seed = 0;
    double step_tolerance = 1e-10; ///< simplex diameter at which a restart stops
    double value_tolerance = 1e-8; ///< value spread at which a restart stops
    int threads = 0;
};

struct MinDistanceOutcome {
    double value = 0.0;
    Eigen::MatrixXcd minimizer; ///< the rank-<= k state realizing `value`
    /// True when the winning simplex restart collapsed below step_tolerance
    /// before max_iters ran out — the only phase that can be cut off by the
    /// iteration budget. The gradient-sampling polish that follows always
    /// completes its radius anneal, so it never clears or sets this flag.
    bool converged = false;
};

struct MaxDistanceOutcome {
    double value = 0.0;
    Eigen::VectorXd spectrum; ///< descending simplex vector realizing `value`
    /// True when the final annealed polish drove its probe step down to its
    /// floor (i.e. the search settled rather than hitting a trial cap).
    bool converged = false;
};

/// Independent check of the closest-state distance: minimizes
/// ||X - A A*/tr(A A*)|| over an n x k complex block A, whose normalized
/// Gram matrix ranges over exactly the rank-<= k states. Multistart
/// Nelder-Mead finds the basin; a gradient-sampling polish with bundle-style
/// null steps then follows the kinked valley that max- and partial-sum norms
/// put at the optimum, where simplex and random probing stall. Knows nothing
/// about the closed-form answer: it touches only eigenvalue extraction, norm
/// evaluation, and norm subgradients.
MinDistanceOutcome oracle_min_distance(const DensityMatrix& state, int rank_bound,
                                       const NormSpec& spec, const OracleConfig& cfg = {});

/// Maximizes `distance_fn` over descending simplex vectors of length dim by
/// the same multistart search (dim reals squared-and-normalized onto the
/// simplex, then sorted). The objective is injected, so callers decide what
/// distance is being maximized — typically distance_to_low_rank bound to a
/// rank limit and a norm spec.
MaxDistanceOutcome oracle_max_distance(int dim,
                                       const std::function<double(const Eigen::VectorXd&)>& distance_fn,
                                       const OracleConfig& cfg = {});

} // namespace lowrankdm
