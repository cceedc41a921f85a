#include "lowrankdm/farthest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lowrankdm/approx.hpp"

namespace lowrankdm {

namespace {

void check_search_range(int n, int k) {
    if (n < 2 || k < 1 || k >= n) {
        std::ostringstream msg;
        msg << "need 1 <= k < n, got n=" << n << " k=" << k;
        throw Error(ErrorKind::bad_range, msg.str());
    }
}

Eigen::VectorXd uniform_spectrum(int n, int m) {
    Eigen::VectorXd eigs = Eigen::VectorXd::Zero(n);
    eigs.head(m).setConstant(1.0 / m);
    return eigs;
}

/// p-th power of the Schatten-p distance of the m-level candidate, the scale
/// on which the crossing equations between candidates are written:
///   (m-k)/m^p + k*((m-k)/(km))^p.
double candidate_power(int m, int k, double p) {
    const double gamma = static_cast<double>(m - k) / (static_cast<double>(k) * m);
    return (m - k) * std::pow(1.0 / m, p) + k * std::pow(gamma, p);
}

} // namespace

double candidate_distance(int n, int m, int k, const NormSpec& spec) {
    check_search_range(n, k);
    if (m < k + 1 || m > n) {
        std::ostringstream msg;
        msg << "candidate level count m=" << m << " outside [k+1, n] = [" << (k + 1)
            << ", " << n << "]";
        throw Error(ErrorKind::bad_range, msg.str());
    }
    return distance_to_low_rank(uniform_spectrum(n, m), k, spec);
}

double kyfan_candidate_closed_form(int n, int m, int k, int r) {
    check_search_range(n, k);
    if (m < k + 1 || m > n || r < 1 || r > n) {
        std::ostringstream msg;
        msg << "bad closed-form arguments n=" << n << " m=" << m << " k=" << k << " r=" << r;
        throw Error(ErrorKind::bad_range, msg.str());
    }
    const double dm = m;
    const double dk = k;
    const double dr = r;
    if (r < k) {
        if (m >= 2 * k) {
            return dr * (1.0 / dk - 1.0 / dm);
        }
        if (m >= r + k) {
            return dr / dm;
        }
        return (dm - dk) * (2.0 * dk + dr - dm) / (dk * dm);
    }
    // k <= r
    if (m <= r) {
        return 2.0 - 2.0 * dk / dm;
    }
    if (m >= 2 * k) {
        return 1.0 + (dr - 2.0 * dk) / dm;
    }
    // r < m < 2k: the k shift entries gamma = (m-k)/(km) are smaller than the
    // m-k tail entries 1/m, so the top-r sum drains the tail first.
    return (dm - dk) * (2.0 * dk + dr - dm) / (dk * dm);
}

FarthestReport farthest_search(int n, int k, const NormSpec& spec, double tie_tol) {
    check_search_range(n, k);
    FarthestReport report;
    report.n = n;
    report.k = k;
    report.spec = spec;

    double max_value = -std::numeric_limits<double>::infinity();
    for (int m = k + 1; m <= n; ++m) {
        const double value = candidate_distance(n, m, k, spec);
        report.candidate_distances.emplace(m, value);
        max_value = std::max(max_value, value);
    }
    for (const auto& [m, value] : report.candidate_distances) {
        if (max_value - value <= tie_tol) {
            report.ties.push_back(m);
        }
    }
    report.argmax_m = report.ties.back(); // ties go to the largest m
    report.max_distance = report.candidate_distances.at(report.argmax_m);
    return report;
}

double schatten_maxmixed_distance(int n, int k, double p) {
    check_search_range(n, k);
    return candidate_distance(n, n, k, NormSpec::schatten(p));
}

double schatten_maxmixed_distance_power(int n, int k, double p) {
    check_search_range(n, k);
    if (std::isinf(p) || p < 1.0) {
        std::ostringstream msg;
        msg << "power form needs finite p >= 1, got " << p;
        throw Error(ErrorKind::bad_range, msg.str());
    }
    return candidate_power(n, k, p);
}

bool schatten_is_always_maxmixed(double p) {
    if (std::isnan(p) || p < 1.0) {
        std::ostringstream msg;
        msg << "schatten exponent must be >= 1, got " << p;
        throw Error(ErrorKind::bad_range, msg.str());
    }
    if (p == 1.0) {
        return true;
    }
    return p >= 2.0 && p <= 4.0; // excludes p = inf
}

std::optional<SchattenCounterexample> schatten_counterexample(double p, int n_max, int m_max) {
    if (std::isnan(p) || std::isinf(p) || p < 1.0) {
        std::ostringstream msg;
        msg << "counterexample scan needs finite p >= 1, got " << p;
        throw Error(ErrorKind::bad_range, msg.str());
    }

    const auto verified = [&](int n, int k, int m) -> std::optional<SchattenCounterexample> {
        const NormSpec spec = NormSpec::schatten(p);
        const double candidate = distance_to_low_rank(uniform_spectrum(n, m), k, spec);
        const double maxmixed = distance_to_low_rank(uniform_spectrum(n, n), k, spec);
        if (!(candidate > maxmixed)) {
            return std::nullopt;
        }
        std::ostringstream desc;
        desc << "state with " << m << " equal eigenvalues 1/" << m << " in dimension " << n
             << " beats the maximally mixed state at rank bound " << k;
        return SchattenCounterexample{n, k, candidate, maxmixed, desc.str()};
    };

    // Family 1 (bites for 1 < p < 2): k = 1, candidate has n-1 equal levels.
    // On the power scale both distances are f(x) = (x + x^p)/(x+1)^p up to a
    // shared positive factor, with x = n-2 for the candidate and x = n-1 for
    // the maximally mixed state; a strict decrease certifies the instance.
    const auto f = [p](double x) { return (x + std::pow(x, p)) / std::pow(x + 1.0, p); };
    for (int n = 3; n <= n_max; ++n) {
        if (f(n - 2) > f(n - 1)) {
            if (auto hit = verified(n, 1, n - 1)) {
                return hit;
            }
        }
    }

    // Family 2 (bites for p > 4): (n, k) = (3m, 2m), candidate one level short.
    for (int m = 2; m <= m_max; ++m) {
        const int n = 3 * m;
        const int k = 2 * m;
        if (candidate_power(n - 1, k, p) > candidate_power(n, k, p)) {
            if (auto hit = verified(n, k, n - 1)) {
                return hit;
            }
        }
    }
    return std::nullopt;
}

double schatten_crossing(int n, int k, int m1, int m2, double p_lo, double p_hi) {
    check_search_range(n, k);
    for (const int m : {m1, m2}) {
        if (m < k + 1 || m > n) {
            std::ostringstream msg;
            msg << "candidate level count m=" << m << " outside [k+1, n]";
            throw Error(ErrorKind::bad_range, msg.str());
        }
    }
    if (!(p_lo >= 1.0) || !(p_hi > p_lo) || std::isinf(p_hi)) {
        std::ostringstream msg;
        msg << "need a finite exponent bracket with 1 <= lo < hi, got [" << p_lo << ", "
            << p_hi << "]";
        throw Error(ErrorKind::bad_range, msg.str());
    }

    const auto diff = [&](double p) { return candidate_power(m1, k, p) - candidate_power(m2, k, p); };
    double lo = p_lo;
    double hi = p_hi;
    double f_lo = diff(lo);
    const double f_hi = diff(hi);
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "candidate order does not change over [" << p_lo << ", " << p_hi << "]";
        throw Error(ErrorKind::no_sign_change, msg.str());
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = diff(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

KyFanSelector kyfan_optimal_m(int n, int k, int r) {
    check_search_range(n, k);
    if (r < 1 || r > n) {
        std::ostringstream msg;
        msg << "ky fan order r=" << r << " outside [1, " << n << "]";
        throw Error(ErrorKind::bad_range, msg.str());
    }

    KyFanSelector selector;
    selector.r = r;
    selector.g_value = 0.5 * (std::sqrt(static_cast<double>(r) * (4.0 * n + r)) - r);
    selector.golden_threshold = 0.5 * (1.0 + std::sqrt(5.0)) * r;

    const NormSpec spec = NormSpec::ky_fan(r);
    const auto clamp_m = [&](int m) { return std::clamp(m, k + 1, n); };
    const auto resolve_candidates = [&](std::initializer_list<int> raw) {
        for (const int m : raw) {
            const int clamped = clamp_m(m);
            if (std::find(selector.candidates.begin(), selector.candidates.end(), clamped) ==
                selector.candidates.end()) {
                selector.candidates.push_back(clamped);
            }
        }
        std::sort(selector.candidates.begin(), selector.candidates.end());
        selector.predicted_m = selector.candidates.front();
        selector.predicted_value = candidate_distance(n, selector.predicted_m, k, spec);
        for (const int m : selector.candidates) {
            const double value = candidate_distance(n, m, k, spec);
            if (value >= selector.predicted_value - 1e-12) { // ties go to larger m
                selector.predicted_m = m;
                selector.predicted_value = std::max(selector.predicted_value, value);
            }
        }
    };

    const int hump_floor = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k) *
                                                                 (2.0 * k + r))));
    if (2 * k <= r) {
        selector.candidates = {clamp_m(r)};
        selector.predicted_m = selector.candidates.front();
        selector.predicted_value = candidate_distance(n, selector.predicted_m, k, spec);
    } else if (k <= r) {
        // The blended region r < m < 2k can beat both endpoints; its peak sits
        // at sqrt(k(2k+r)), which lies in [r, 2k] exactly when r <= 2k.
        resolve_candidates({r, n, hump_floor, hump_floor + 1});
    } else if (k <= selector.golden_threshold) {
        resolve_candidates({n, k + r, hump_floor, hump_floor + 1});
    } else {
        // Far side of the golden ratio: the peak clears r+k, so the scan is
        // monotone up to min(r+k, n) and again from 2k to n; g(r,n) marks
        // where the two endpoint values cross. Ties (k exactly at g) go to n.
        if (k <= selector.g_value + 1e-9) {
            selector.candidates = {n};
        } else {
            selector.candidates = {std::min(k + r, n)};
        }
        selector.predicted_m = selector.candidates.front();
        selector.predicted_value = candidate_distance(n, selector.predicted_m, k, spec);
    }

    const FarthestReport exhaustive = farthest_search(n, k, spec);
    if (std::abs(selector.predicted_value - exhaustive.max_distance) > 1e-9) {
        std::ostringstream msg;
        msg << "selector predicts m=" << selector.predicted_m << " value "
            << selector.predicted_value << " but the scan found m=" << exhaustive.argmax_m
            << " value " << exhaustive.max_distance << " (n=" << n << " k=" << k
            << " r=" << r << ")";
        throw Error(ErrorKind::internal_inconsistency, msg.str());
    }
    return selector;
}

std::pair<int, double> operator_norm_farthest(int n, int k) {
    check_search_range(n, k);
    if (static_cast<long long>(k) * (k + 1) <= n) {
        return {n, 1.0 / k - 1.0 / n};
    }
    return {k + 1, 1.0 / (k + 1)};
}

} // namespace lowrankdm
