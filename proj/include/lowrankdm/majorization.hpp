#pragma once

#include <optional>

#include <Eigen/Dense>

#include "lowrankdm/spectra.hpp"

namespace lowrankdm {

/// True iff y majorizes x (written x ≺ y): for every prefix length, the sum
/// of the r largest entries of x is at most that of y within tol, and the
/// totals agree within tol. Vectors need not be pre-sorted. Throws
/// Error(length_mismatch) when the lengths differ.
bool majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double tol = 1e-9);

/// Decides whether ||X|| <= ||Y|| holds for EVERY unitary-similarity-invariant
/// norm, via the eigenvalue test: there exists t in [0,1] with
///     lambda(X) ≺ t * lambda(Y) + (1 - t) * lambda(-Y).
/// Returns the witness t when the test succeeds, std::nullopt otherwise.
///
/// When |trace Y| > tol the equal-sums constraint pins
/// t = (trace X + trace Y) / (2 trace Y) and only that t is checked. When
/// trace Y is within tol of zero, a 1001-point grid on [0,1] is scanned from
/// t = 1 downward (the feasibility margin is piecewise linear in t) and the
/// feasibility boundary is refined by bisection, so the LARGEST feasible t
/// is returned. Throws Error(dimension_mismatch) when dimensions differ.
std::optional<double> usi_dominates(const HermitianMatrix& x, const HermitianMatrix& y,
                                    double tol = 1e-9);

} // namespace lowrankdm
