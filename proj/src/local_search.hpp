#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "lowrankdm/random.hpp"

namespace lowrankdm::detail {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct SearchResult {
    Eigen::VectorXd point;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SearchOptions {
    int max_iters = 2000;
    double step_tolerance = 1e-10;  ///< simplex diameter / final compass step
    double value_tolerance = 1e-8;  ///< value spread across the simplex
};

/// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Minimizes `fn` from `start`, building the
/// initial simplex by displacing each coordinate by `scale`.
inline SearchResult nelder_mead(const Objective& fn, const Eigen::VectorXd& start,
                                double scale, const SearchOptions& opts) {
    const int dim = static_cast<int>(start.size());
    const int count = dim + 1;

    std::vector<Eigen::VectorXd> points(count, start);
    std::vector<double> values(count);
    for (int i = 0; i < dim; ++i) {
        points[i + 1](i) += scale;
    }
    for (int i = 0; i < count; ++i) {
        values[i] = fn(points[i]);
    }

    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    const auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return values[a] < values[b]; });
    };

    SearchResult result;
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        sort_order();
        const int best = order.front();
        const int worst = order.back();
        const int second_worst = order[count - 2];

        double diameter = 0.0;
        double spread = 0.0;
        for (int i = 0; i < count; ++i) {
            diameter = std::max(diameter, (points[i] - points[best]).lpNorm<Eigen::Infinity>());
            spread = std::max(spread, std::abs(values[i] - values[best]));
        }
        if (diameter <= opts.step_tolerance && spread <= opts.value_tolerance) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < count; ++i) {
            if (i != worst) {
                centroid += points[i];
            }
        }
        centroid /= dim;

        const Eigen::VectorXd reflected = centroid + (centroid - points[worst]);
        const double f_reflected = fn(reflected);

        if (f_reflected < values[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - points[worst]);
            const double f_expanded = fn(expanded);
            if (f_expanded < f_reflected) {
                points[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                points[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            points[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        if (f_reflected < values[worst]) { // outside contraction
            const Eigen::VectorXd contracted = centroid + 0.5 * (reflected - centroid);
            const double f_contracted = fn(contracted);
            if (f_contracted <= f_reflected) {
                points[worst] = contracted;
                values[worst] = f_contracted;
                continue;
            }
        } else { // inside contraction
            const Eigen::VectorXd contracted = centroid - 0.5 * (centroid - points[worst]);
            const double f_contracted = fn(contracted);
            if (f_contracted < values[worst]) {
                points[worst] = contracted;
                values[worst] = f_contracted;
                continue;
            }
        }

        for (int i = 0; i < count; ++i) { // shrink toward the best point
            if (i == best) {
                continue;
            }
            points[i] = points[best] + 0.5 * (points[i] - points[best]);
            values[i] = fn(points[i]);
        }
    }

    sort_order();
    result.point = points[order.front()];
    result.value = values[order.front()];
    result.iterations = iter;
    return result;
}

/// Re-inflating simplex search: runs nelder_mead repeatedly from the best
/// point found, shrinking the initial simplex scale each stage. A collapsed
/// simplex is the classic failure mode in tens of dimensions; rebuilding it
/// around the incumbent recovers progress at a tiny cost.
inline SearchResult staged_nelder_mead(const Objective& fn, const Eigen::VectorXd& start,
                                       double scale, double shrink, int stages,
                                       const SearchOptions& opts) {
    SearchResult best = nelder_mead(fn, start, scale, opts);
    for (int stage = 1; stage < stages; ++stage) {
        scale *= shrink;
        SearchResult next = nelder_mead(fn, best.point, scale, opts);
        const double gain = best.value - next.value;
        if (next.value < best.value) {
            best = std::move(next);
        }
        if (gain < opts.value_tolerance * 1e-2 && stage >= 3) {
            break; // stalled well below the requested resolution
        }
    }
    return best;
}

/// Coordinate-descent polish: probes +-step along each axis, keeps strict
/// improvements, and halves the step after any sweep without one. Cheap and
/// robust near a minimum where the simplex has already collapsed.
inline SearchResult compass_polish(const Objective& fn, const Eigen::VectorXd& start,
                                   double step, const SearchOptions& opts) {
    SearchResult result;
    result.point = start;
    result.value = fn(start);

    const int dim = static_cast<int>(start.size());
    int iter = 0;
    while (step > opts.step_tolerance && iter < opts.max_iters) {
        bool improved = false;
        for (int i = 0; i < dim; ++i) {
            for (const double sign : {1.0, -1.0}) {
                Eigen::VectorXd probe = result.point;
                probe(i) += sign * step;
                const double value = fn(probe);
                if (value < result.value) {
                    result.point = std::move(probe);
                    result.value = value;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
        ++iter;
    }
    result.iterations = iter;
    result.converged = step <= opts.step_tolerance;
    return result;
}

/// Direction-randomized polish for objectives with kinks that axis-aligned
/// probes cannot cross (top-eigenvalue ties under max- or partial-sum norms):
/// each trial draws a fresh random unit direction and probes +-step along it.
/// The step halves once 2*dim trials at the current step have failed;
/// successes move the point but do not extend the step's budget, so the step
/// keeps annealing even when rare improvements trickle in indefinitely — near
/// a kink the value error scales with the step, so reaching fine accuracy
/// requires the anneal to continue, not stall.
inline SearchResult random_polish(const Objective& fn, const Eigen::VectorXd& start,
                                  double step, int max_trials, double step_floor,
                                  SplitMix64& rng) {
    SearchResult result;
    result.point = start;
    result.value = fn(start);

    const int dim = static_cast<int>(start.size());
    int failures = 0;
    int trial = 0;
    for (; trial < max_trials && step > step_floor; ++trial) {
        Eigen::VectorXd direction(dim);
        for (int i = 0; i < dim; ++i) {
            direction(i) = gaussian(rng);
        }
        const double length = direction.norm();
        if (length == 0.0) {
            continue;
        }
        direction /= length;

        bool improved = false;
        for (const double sign : {1.0, -1.0}) {
            Eigen::VectorXd probe = result.point + sign * step * direction;
            const double value = fn(probe);
            if (value < result.value) {
                result.point = std::move(probe);
                result.value = value;
                improved = true;
                break;
            }
        }
        if (!improved && ++failures >= 2 * dim) {
            failures = 0;
            step *= 0.5;
        }
    }
    result.iterations = trial;
    result.converged = step <= step_floor;
    return result;
}

} // namespace lowrankdm::detail
