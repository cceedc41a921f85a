#include "lowrankdm/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace lowrankdm {

namespace {

Eigen::VectorXd sorted_descending(const Eigen::VectorXd& v) {
    Eigen::VectorXd out = v;
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

} // namespace

bool majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol) {
    if (x.size() != y.size()) {
        std::ostringstream msg;
        msg << "vector lengths differ: " << x.size() << " vs " << y.size();
        throw Error(ErrorKind::length_mismatch, msg.str());
    }
    const Eigen::VectorXd xs = sorted_descending(x);
    const Eigen::VectorXd ys = sorted_descending(y);
    double prefix_x = 0.0;
    double prefix_y = 0.0;
    for (Eigen::Index r = 0; r < xs.size(); ++r) {
        prefix_x += xs[r];
        prefix_y += ys[r];
        if (!(prefix_x <= prefix_y + tol)) {
            return false;
        }
    }
    return std::abs(prefix_x - prefix_y) <= tol;
}

namespace {

/// Feasibility margin of lambda(X) ≺ t*lambda(Y) + (1-t)*lambda(-Y) as a
/// function of t. Both blend inputs are descending, so their blend stays
/// descending for every t in [0,1] and each prefix sum is LINEAR in t; the
/// margin (min of the prefix slacks and the negated total mismatch) is
/// therefore concave piecewise-linear, and its superlevel sets are intervals.
class BlendMargin {
public:
    BlendMargin(Eigen::VectorXd lam_x, Eigen::VectorXd lam_y)
        : lam_x_(std::move(lam_x)), lam_y_(std::move(lam_y)),
          lam_neg_y_((-lam_y_).reverse()) {}

    double operator()(double t) const {
        double prefix_x = 0.0;
        double prefix_b = 0.0;
        double margin = std::numeric_limits<double>::infinity();
        const Eigen::Index n = lam_x_.size();
        for (Eigen::Index r = 0; r < n; ++r) {
            prefix_x += lam_x_[r];
            prefix_b += t * lam_y_[r] + (1.0 - t) * lam_neg_y_[r];
            if (r + 1 < n) {
                margin = std::min(margin, prefix_b - prefix_x);
            } else {
                margin = std::min(margin, -std::abs(prefix_b - prefix_x));
            }
        }
        return margin;
    }

private:
    Eigen::VectorXd lam_x_;
    Eigen::VectorXd lam_y_;
    Eigen::VectorXd lam_neg_y_;
};

/// Largest t in [seed, 1] with margin(t) >= -tol, found by bisecting the
/// feasibility boundary (valid because the feasible set is an interval).
double largest_feasible(const BlendMargin& margin, double seed, double tol) {
    if (margin(1.0) >= -tol) {
        return 1.0;
    }
    double lo = seed; // feasible
    double hi = 1.0;  // infeasible
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) >= -tol) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

} // namespace

std::optional<double> usi_dominates(const HermitianMatrix& x, const HermitianMatrix& y,
                                    double tol) {
    if (x.dim() != y.dim()) {
        std::ostringstream msg;
        msg << "dimensions differ: " << x.dim() << " vs " << y.dim();
        throw Error(ErrorKind::dimension_mismatch, msg.str());
    }
    const Eigen::VectorXd lam_x = hermitian_eigenvalues(x);
    const Eigen::VectorXd lam_y = hermitian_eigenvalues(y);
    const double trace_x = lam_x.sum();
    const double trace_y = lam_y.sum();
    const BlendMargin margin(lam_x, lam_y);

    if (std::abs(trace_y) > tol) {
        // Equal sums pin the blend weight: trace X = (2t - 1) trace Y.
        double t = (trace_x + trace_y) / (2.0 * trace_y);
        if (t < -1e-9 || t > 1.0 + 1e-9) {
            return std::nullopt;
        }
        t = std::clamp(t, 0.0, 1.0);
        if (margin(t) >= -tol) {
            return t;
        }
        return std::nullopt;
    }

    // trace Y ~ 0: scan a 1001-point grid for a feasible blend weight.
    constexpr int kGridPoints = 1000;
    int best_i = 0;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (int i = kGridPoints; i >= 0; --i) {
        const double t = static_cast<double>(i) / kGridPoints;
        const double m = margin(t);
        if (m >= -tol) {
            return largest_feasible(margin, t, tol);
        }
        if (m > best_margin) {
            best_margin = m;
            best_i = i;
        }
    }
    // No grid point is feasible; the feasible interval (if any) hides between
    // grid points near the margin's peak. Concavity makes ternary search exact.
    double lo = static_cast<double>(std::max(0, best_i - 1)) / kGridPoints;
    double hi = static_cast<double>(std::min(kGridPoints, best_i + 1)) / kGridPoints;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (margin(m1) < margin(m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    const double peak = 0.5 * (lo + hi);
    if (margin(peak) >= -tol) {
        return largest_feasible(margin, peak, tol);
    }
    return std::nullopt;
}

} // namespace lowrankdm
