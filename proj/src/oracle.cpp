#include "lowrankdm/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "lowrankdm/errors.hpp"
#include "lowrankdm/random.hpp"
#include "local_search.hpp"

namespace lowrankdm {

namespace {

void check_config(const OracleConfig& cfg) {
    if (cfg.restarts < 1 || cfg.max_iters < 1) {
        std::ostringstream msg;
        msg << "search budget must be positive, got restarts=" << cfg.restarts
            << " max_iters=" << cfg.max_iters;
        throw Error(ErrorKind::invalid_argument, msg.str());
    }
}

detail::SearchOptions options_from(const OracleConfig& cfg) {
    detail::SearchOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.step_tolerance = cfg.step_tolerance;
    opts.value_tolerance = cfg.value_tolerance;
    return opts;
}

/// Squares-and-normalizes onto the probability simplex; an all-zero input
/// (measure zero, but reachable by the search) maps to the uniform point.
Eigen::VectorXd simplex_from_weights(const Eigen::VectorXd& weights) {
    Eigen::VectorXd z = weights.array().square();
    const double total = z.sum();
    if (total > 0.0) {
        z /= total;
    } else {
        z.setConstant(1.0 / static_cast<double>(z.size()));
    }
    return z;
}

/// theta = (Re a_11, Im a_11, ..., Re a_nk, Im a_nk) -> A A* / trace(A A*)
/// with A the complex n x k block read from theta. The image is exactly the
/// rank-<= k states, so the search is unconstrained, and the map is smooth
/// away from theta = 0 — unlike an orthonormalized-frame decoding, whose QR
/// factor jumps discontinuously and stalls a simplex search. The all-zero
/// block (never produced by the Gaussian starts) falls back to a basis
/// projector.
Eigen::MatrixXcd block_from_theta(const Eigen::VectorXd& theta, int n, int k) {
    Eigen::MatrixXcd block(n, k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) {
            const int base = 2 * (j * n + i);
            block(i, j) = std::complex<double>(theta(base), theta(base + 1));
        }
    }
    return block;
}

Eigen::MatrixXcd decode_low_rank_state(const Eigen::VectorXd& theta, int n, int k) {
    const double total = theta.squaredNorm(); // equals trace(A A*)
    if (total <= 0.0) {
        Eigen::MatrixXcd fallback = Eigen::MatrixXcd::Zero(n, n);
        fallback(0, 0) = 1.0;
        return fallback;
    }
    const Eigen::MatrixXcd block = block_from_theta(theta, n, k);
    return (block * block.adjoint()) / total;
}

/// One subgradient of the norm at a Hermitian point: with R = V diag(l) V*,
/// every norm in the family has subgradients of the form V diag(w) V* where
/// w_i = sign(l_i) * c_i and the c_i depend only on the magnitudes |l_i| —
/// all magnitudes weighted (|l_i|/value)^(p-1) for finite p, the largest
/// magnitude alone for the sup norm, the r largest magnitudes for partial
/// sums. Eigenvalue ties make the choice non-unique; any pick is a valid
/// subgradient, which is all a descent polish needs.
Eigen::MatrixXcd norm_subgradient(const Eigen::MatrixXcd& residual, const NormSpec& spec) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(residual);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::eigensolver_failure,
                    "eigensolver did not converge on a polish residual");
    }
    const Eigen::VectorXd lambda = solver.eigenvalues();
    const int n = static_cast<int>(lambda.size());

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(lambda(a)) > std::abs(lambda(b));
    });

    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    const auto signum = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
    if (spec.is_ky_fan()) {
        const int r = std::min(spec.r(), n);
        for (int j = 0; j < r; ++j) {
            const int i = order[static_cast<std::size_t>(j)];
            weights(i) = signum(lambda(i));
        }
    } else if (std::isinf(spec.p())) {
        const int top = order.front();
        weights(top) = signum(lambda(top));
    } else {
        const double value = norm_of_values(lambda.array().abs().matrix(), spec);
        if (value <= 0.0) {
            return Eigen::MatrixXcd::Zero(n, n);
        }
        const double p = spec.p();
        for (int i = 0; i < n; ++i) {
            weights(i) = signum(lambda(i)) * std::pow(std::abs(lambda(i)) / value, p - 1.0);
        }
    }
    return solver.eigenvectors() * weights.asDiagonal() *
           solver.eigenvectors().adjoint();
}

/// Gradient of the composite objective ||target - A A*/tr(A A*)|| at theta
/// (valid wherever the chosen norm subgradient is the gradient, i.e. away
/// from eigenvalue ties — almost everywhere): with X = A A*/t, t = tr(A A*),
/// G a norm subgradient at the residual target - X, and c0 = <G, X>, the
/// chain rule through the normalized Gram map gives the block-space ascent
/// direction W = (2/t)(c0 A - G A). Gauge motions A -> cA or A -> AU change
/// nothing and are automatically orthogonal to W.
Eigen::VectorXd composite_gradient(const Eigen::MatrixXcd& target, const NormSpec& spec,
                                   int n, int k, const Eigen::VectorXd& theta) {
    const double total = theta.squaredNorm();
    if (total <= 0.0) {
        return Eigen::VectorXd::Zero(theta.size());
    }
    const Eigen::MatrixXcd block = block_from_theta(theta, n, k);
    const Eigen::MatrixXcd state = (block * block.adjoint()) / total;
    const Eigen::MatrixXcd gsub = norm_subgradient(target - state, spec);
    const Eigen::MatrixXcd gblock = gsub * block;
    const double overlap = // <G, X> = Re tr(G A A*) / t
        gblock.cwiseProduct(block.conjugate()).sum().real() / total;
    const Eigen::MatrixXcd direction = (2.0 / total) * (overlap * block - gblock);

    Eigen::VectorXd grad(theta.size());
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) {
            const int base = 2 * (j * n + i);
            grad(base) = direction(i, j).real();
            grad(base + 1) = direction(i, j).imag();
        }
    }
    return grad;
}

/// Euclidean projection onto the probability simplex (sort-based).
Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& v) {
    const int m = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + m);
    std::sort(u.begin(), u.end(), std::greater<>());
    double running = 0.0;
    double tau = 0.0;
    for (int j = 0; j < m; ++j) {
        running += u[static_cast<std::size_t>(j)];
        const double t = (1.0 - running) / static_cast<double>(j + 1);
        if (u[static_cast<std::size_t>(j)] + t > 0.0) {
            tau = t;
        }
    }
    return (v.array() + tau).cwiseMax(0.0);
}

/// Minimum-norm element of the convex hull of the rows of `grads`, by
/// projected gradient on the simplex of hull coefficients.
Eigen::VectorXd min_norm_hull_point(const Eigen::MatrixXd& grads) {
    const int m = static_cast<int>(grads.rows());
    const Eigen::MatrixXd gram = grads * grads.transpose();
    Eigen::VectorXd alpha = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    const double lipschitz = std::max(gram.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
    const double step = 1.0 / lipschitz;
    for (int iter = 0; iter < 200; ++iter) {
        alpha = project_onto_simplex(alpha - step * (gram * alpha));
    }
    return grads.transpose() * alpha;
}

/// Gradient-sampling polish: near a kinked minimum the objective is a narrow
/// curved valley whose descent cone is too thin for random probes, and a
/// single subgradient only sees one wall of the valley. Sampling gradients
/// at `dim + 10` random points within the sampling radius and stepping along
/// the negative minimum-norm element of their convex hull recovers the
/// valley-floor direction (the walls' gradients cancel inside the hull).
/// The radius halves when steps of that length stop helping, so the iterate
/// tracks the valley at ever finer scales. Gradients are exact almost
/// everywhere, which is all the hull construction needs.
detail::SearchResult gradient_sampling_polish(const detail::Objective& objective,
                                              const Eigen::MatrixXcd& target,
                                              const NormSpec& spec, int n, int k,
                                              const detail::SearchResult& seed,
                                              double radius, double radius_floor,
                                              SplitMix64& rng) {
    detail::SearchResult best = seed;
    const int dim = static_cast<int>(best.point.size());
    const int samples = dim + 10;

    while (radius > radius_floor) {
        int failures = 0;
        for (int iter = 0; iter < 100 && failures < 3; ++iter) {
            Eigen::MatrixXd bundle(samples + 7, dim);
            bundle.row(0) = composite_gradient(target, spec, n, k, best.point).transpose();
            for (int s = 1; s <= samples; ++s) {
                Eigen::VectorXd offset(dim);
                for (int i = 0; i < dim; ++i) {
                    offset(i) = gaussian(rng);
                }
                const double length = offset.norm();
                if (length > 0.0) {
                    // uniform-in-ball radial law: scale a unit direction by
                    // radius * U^(1/dim)
                    const double u = uniform_double(rng);
                    offset *= radius * std::pow(u, 1.0 / static_cast<double>(dim)) / length;
                }
                bundle.row(s) =
                    composite_gradient(target, spec, n, k, best.point + offset).transpose();
            }

            // Null-step loop: random samples can miss a thin active piece
            // near an eigenvalue tie, in which case the min-norm direction
            // points into the missed piece and the line search fails there.
            // The gradient at the failed probe lies exactly in that piece;
            // appending it and re-solving lets the hull self-correct.
            bool improved = false;
            bool stationary = false;
            int rows = samples + 1;
            for (int null_step = 0; null_step < 6 && !improved; ++null_step) {
                const Eigen::VectorXd hull = min_norm_hull_point(bundle.topRows(rows));
                const double hull_norm = hull.norm();
                if (hull_norm * radius < 1e-16) {
                    stationary = true; // stationary at this scale
                    break;
                }
                const Eigen::VectorXd direction = hull / hull_norm;

                for (const double scale : {2.0, 1.0, 0.5, 0.25, 0.125}) {
                    Eigen::VectorXd candidate = best.point - (scale * radius) * direction;
                    const double value = objective(candidate);
                    if (value < best.value) {
                        best.point = std::move(candidate);
                        best.value = value;
                        improved = true;
                        // expand greedily along the same direction: long
                        // valleys take many radius-sized steps otherwise
                        double stride = 2.0 * scale * radius;
                        for (int grow = 0; grow < 8; ++grow, stride *= 2.0) {
                            Eigen::VectorXd extended = best.point - stride * direction;
                            const double extended_value = objective(extended);
                            if (extended_value >= best.value) {
                                break;
                            }
                            best.point = std::move(extended);
                            best.value = extended_value;
                        }
                        break;
                    }
                }
                if (!improved && rows < bundle.rows()) {
                    bundle.row(rows++) =
                        composite_gradient(target, spec, n, k,
                                           best.point - radius * direction)
                            .transpose();
                }
            }
            if (stationary) {
                break;
            }
            failures = improved ? 0 : failures + 1;
        }
        radius *= 0.5;
    }
    return best;
}

struct RestartOutcome {
    detail::SearchResult search;
    int index = 0;
};

/// Runs `restarts` independent searches and returns the best by value, ties
/// to the lower restart index — deterministic regardless of thread schedule.
RestartOutcome multistart(const detail::Objective& objective, int dim,
                          const OracleConfig& cfg, double init_scale) {
    std::vector<std::uint64_t> seeds(cfg.restarts);
    SplitMix64 seeder(cfg.seed);
    for (auto& seed : seeds) {
        seed = seeder.next();
    }

    const detail::SearchOptions opts = options_from(cfg);
    std::vector<detail::SearchResult> results(cfg.restarts);
    const auto run_one = [&](int index) {
        SplitMix64 rng(seeds[index]);
        Eigen::VectorXd start(dim);
        for (int i = 0; i < dim; ++i) {
            start(i) = gaussian(rng);
        }
        results[index] =
            detail::staged_nelder_mead(objective, start, init_scale, 0.3, 5, opts);
    };

    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, cfg.restarts);
    if (threads == 1) {
        for (int i = 0; i < cfg.restarts; ++i) {
            run_one(i);
        }
    } else {
        std::atomic<int> cursor{0};
        std::vector<std::future<void>> workers;
        workers.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            workers.push_back(std::async(std::launch::async, [&] {
                for (int i = cursor.fetch_add(1); i < cfg.restarts; i = cursor.fetch_add(1)) {
                    run_one(i);
                }
            }));
        }
        for (auto& worker : workers) {
            worker.get();
        }
    }

    RestartOutcome best{results[0], 0};
    for (int i = 1; i < cfg.restarts; ++i) {
        if (results[i].value < best.search.value) {
            best = {results[i], i};
        }
    }
    return best;
}

/// Two-phase refinement of the multistart winner: an axis compass pass (fast
/// on smooth objectives), then a random-direction pass that crosses the kinks
/// max- and partial-sum norms put exactly at the optimum.
detail::SearchResult polish(const detail::Objective& objective,
                            const detail::SearchResult& seed_result,
                            const OracleConfig& cfg) {
    detail::SearchOptions opts = options_from(cfg);
    opts.max_iters = 200; // compass sweeps, each up to 2*dim evaluations
    detail::SearchResult best =
        detail::compass_polish(objective, seed_result.point, 5e-3, opts);
    if (seed_result.value < best.value) {
        best = seed_result;
    }

    SplitMix64 rng(cfg.seed ^ 0xd1b54a32d192ed03ULL);
    const double floor = std::max(cfg.step_tolerance, 1e-10);
    detail::SearchResult randomized =
        detail::random_polish(objective, best.point, 2e-3, 6000, floor, rng);
    if (best.value < randomized.value) {
        randomized = best;
    }
    return randomized;
}

} // namespace

MinDistanceOutcome oracle_min_distance(const DensityMatrix& state, int rank_bound,
                                       const NormSpec& spec, const OracleConfig& cfg) {
    check_config(cfg);
    const int n = state.dim();
    if (rank_bound < 1 || rank_bound > n) {
        std::ostringstream msg;
        msg << "rank bound " << rank_bound << " outside [1, " << n << "]";
        throw Error(ErrorKind::bad_rank, msg.str());
    }

    const int k = rank_bound;
    const int dim = 2 * n * k;
    const Eigen::MatrixXcd& target = state.matrix();
    const detail::Objective objective = [&](const Eigen::VectorXd& theta) {
        const Eigen::MatrixXcd candidate = decode_low_rank_state(theta, n, k);
        const HermitianMatrix residual = HermitianMatrix::validate(target - candidate);
        return norm_of_values(hermitian_singular_values(residual), spec);
    };

    const RestartOutcome best = multistart(objective, dim, cfg, 0.5);
    SplitMix64 sampling_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const detail::SearchResult polished = gradient_sampling_polish(
        objective, target, spec, n, k, best.search, 5e-3, 1e-8, sampling_rng);

    MinDistanceOutcome outcome;
    outcome.value = polished.value;
    const Eigen::MatrixXcd raw = decode_low_rank_state(polished.point, n, k);
    outcome.minimizer = 0.5 * (raw + raw.adjoint());
    outcome.converged = best.search.converged; // see MinDistanceOutcome::converged
    return outcome;
}

MaxDistanceOutcome oracle_max_distance(int dim,
                                       const std::function<double(const Eigen::VectorXd&)>& distance_fn,
                                       const OracleConfig& cfg) {
    check_config(cfg);
    if (dim < 1) {
        std::ostringstream msg;
        msg << "spectrum length must be positive, got " << dim;
        throw Error(ErrorKind::invalid_argument, msg.str());
    }
    if (!distance_fn) {
        throw Error(ErrorKind::invalid_argument, "distance function is empty");
    }

    const auto decode = [dim](const Eigen::VectorXd& theta) {
        Eigen::VectorXd z = simplex_from_weights(theta);
        std::sort(z.data(), z.data() + dim, std::greater<>());
        return z;
    };
    const detail::Objective objective = [&](const Eigen::VectorXd& theta) {
        return -distance_fn(decode(theta));
    };

    const RestartOutcome best = multistart(objective, dim, cfg, 0.5);
    const detail::SearchResult polished = polish(objective, best.search, cfg);

    MaxDistanceOutcome outcome;
    outcome.value = -polished.value;
    outcome.spectrum = decode(polished.point);
    outcome.converged = polished.converged;
    return outcome;
}

} // namespace lowrankdm
