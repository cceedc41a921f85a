#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lowrankdm/norms.hpp"

namespace lowrankdm {

/// Distance from the state with m equal eigenvalues 1/m (and n-m zeros) to
/// the rank-<= k states. Requires k+1 <= m <= n (Error(bad_range)).
/// The states I_m/m + zero padding are the only candidates that can attain
/// the maximum distance over all n-dimensional states.
double candidate_distance(int n, int m, int k, const NormSpec& spec);

/// Closed-form value of candidate_distance for the Ky Fan-r norm. With
/// gamma = (m-k)/(km):
///   r < k : r(1/k - 1/m)          if m >= 2k
///           r/m                    if r+k <= m <= 2k
///           (m-k)(2k+r-m)/(km)     if m <= r+k
///   k <= r: 2 - 2k/m               if m <= r
///           1 + (r-2k)/m           if m >= max(r, 2k)
///           (m-k)(2k+r-m)/(km)     if r < m < 2k
/// The last k <= r branch covers the range where the k copies of gamma are
/// smaller than the m-k tail entries 1/m, so the top-r sum drains the tail
/// first.
double kyfan_candidate_closed_form(int n, int m, int k, int r);

/// Exhaustive scan over the candidate family m = k+1, ..., n.
struct FarthestReport {
    int n = 0;
    int k = 0;
    NormSpec spec = NormSpec::trace();
    std::map<int, double> candidate_distances; ///< m -> distance
    int argmax_m = 0;        ///< largest m within tie_tol of the maximum
    double max_distance = 0; ///< distance at argmax_m
    std::vector<int> ties;   ///< every m within tie_tol of the maximum
};

/// Requires 1 <= k < n (Error(bad_range)). Ties are resolved toward larger
/// m, so the maximally mixed state is reported whenever it attains the max.
FarthestReport farthest_search(int n, int k, const NormSpec& spec, double tie_tol = 1e-10);

/// Schatten-p distance from the maximally mixed state I_n/n to the
/// rank-<= k states: ((n-k)/n^p + k(1/k - 1/n)^p)^(1/p); for p = inf,
/// max(1/n, 1/k - 1/n).
double schatten_maxmixed_distance(int n, int k, double p);

/// The same quantity without the 1/p root (finite p only). This is the scale
/// on which the crossing equations between candidates are stated.
double schatten_maxmixed_distance_power(int n, int k, double p);

/// True iff the maximally mixed state attains the maximum Schatten-p distance
/// for EVERY n and k: exactly p = 1 or 2 <= p <= 4 (inf excluded).
bool schatten_is_always_maxmixed(double p);

/// A verified instance where some candidate state is strictly farther from
/// the rank-<= k states than the maximally mixed state is.
struct SchattenCounterexample {
    int n = 0;
    int k = 0;
    double candidate_value = 0.0; ///< distance of the candidate (true norm)
    double maxmixed_value = 0.0;  ///< distance of I_n/n (true norm)
    std::string description;
};

/// Searches the two scaling families that produce counterexamples:
///   1 < p < 2 : k = 1, candidate I_{n-1}/(n-1) + one zero, smallest n <= n_max;
///   p > 4     : (n,k) = (3m, 2m), candidate I_{3m-1}/(3m-1) + one zero,
///               smallest m <= m_max.
/// Both scans always run; each hit is re-verified through the residual
/// distance before being returned. Returns std::nullopt when the bounds are
/// exhausted (reported, not asserted as nonexistence — and for p = 1 or
/// 2 <= p <= 4 no instance exists at all). Requires finite p >= 1
/// (Error(bad_range)).
std::optional<SchattenCounterexample> schatten_counterexample(double p, int n_max = 10000,
                                                              int m_max = 2000);

/// The exponent where candidates m1 and m2 swap order: bisects the sign of
/// the difference of p-th-power distances over [p_lo, p_hi] down to a bracket
/// width of 1e-10 and returns the midpoint. Requires a sign change over the
/// bracket (Error(no_sign_change)) and k+1 <= m1, m2 <= n.
double schatten_crossing(int n, int k, int m1, int m2, double p_lo, double p_hi);

/// Prediction of the farthest candidate under the Ky Fan-r norm.
struct KyFanSelector {
    int r = 0;
    double g_value = 0.0;          ///< g(r,n) = (sqrt(r(4n+r)) - r)/2
    double golden_threshold = 0.0; ///< phi * r with phi = (1+sqrt(5))/2
    std::vector<int> candidates;   ///< evaluated candidate m values
    int predicted_m = 0;
    double predicted_value = 0.0;
};

/// Case analysis on (k, r):
///   k <= r/2          : m = r;
///   r/2 < k <= r      : best of {r, n, floor/ceil sqrt(k(2k+r))} clamped to [k+1, n];
///   r < k <= phi*r    : best of {n, k+r, floor/ceil sqrt(k(2k+r))} clamped;
///   k > phi*r         : m = n when k <= g(r,n) (+ ties), else m = min(k+r, n).
/// The prediction is always cross-checked against farthest_search; a value
/// mismatch raises Error(internal_inconsistency). Ties go to larger m.
/// Requires 1 <= k < n, 1 <= r <= n (Error(bad_range)).
KyFanSelector kyfan_optimal_m(int n, int k, int r);

/// Operator-norm specialization: (m, distance) = (n, 1/k - 1/n) when
/// k(k+1) <= n, else (k+1, 1/(k+1)). Requires 1 <= k < n (Error(bad_range)).
std::pair<int, double> operator_norm_farthest(int n, int k);

} // namespace lowrankdm
