#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "lowrankdm/spectra.hpp"

namespace lowrankdm {

/// A unitary-similarity-invariant matrix norm: Schatten-p (p in [1, inf])
/// or Ky Fan-r (sum of the r largest singular values).
///
/// Aliases: trace = schatten(1), frobenius = schatten(2),
/// operator_norm = schatten(inf). Note schatten(inf) and ky_fan(1) agree on
/// every matrix but compare unequal as specs.
class NormSpec {
public:
    enum class Kind { schatten, ky_fan };

    /// Throws Error(invalid_spec) unless p >= 1 (inf allowed).
    static NormSpec schatten(double p);
    /// Throws Error(invalid_spec) unless r >= 1. The upper bound r <= n is
    /// checked when the norm is evaluated against an n-vector.
    static NormSpec ky_fan(int r);

    static NormSpec trace() { return schatten(1.0); }
    static NormSpec frobenius() { return schatten(2.0); }
    static NormSpec operator_norm();

    /// Accepts "schatten:<p>" (p a decimal or "inf"), "kyfan:<r>", and the
    /// aliases "trace", "frobenius", "operator". Throws Error(invalid_spec).
    static NormSpec parse(std::string_view text);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_schatten() const noexcept { return kind_ == Kind::schatten; }
    [[nodiscard]] bool is_ky_fan() const noexcept { return kind_ == Kind::ky_fan; }
    /// Schatten exponent; only meaningful when is_schatten().
    [[nodiscard]] double p() const noexcept { return p_; }
    /// Ky Fan order; only meaningful when is_ky_fan().
    [[nodiscard]] int r() const noexcept { return r_; }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const NormSpec&, const NormSpec&) = default;

private:
    NormSpec(Kind kind, double p, int r) : kind_(kind), p_(p), r_(r) {}
    Kind kind_;
    double p_;
    int r_;
};

/// Norm of a vector of singular values. The input is defensively re-sorted
/// descending and tiny negatives (>= -1e-12) are clamped to zero; genuinely
/// negative entries raise Error(invalid_argument). Ky Fan r > length raises
/// Error(invalid_spec).
///
/// Schatten-p for finite p factors out the largest value before
/// exponentiating so large p cannot overflow.
double norm_of_values(const Eigen::VectorXd& singular_values, const NormSpec& spec);

/// Sum of p-th powers of the singular values, without the 1/p root.
/// Requires finite p >= 1 (Error(invalid_spec) otherwise). The p-th power of
/// the Schatten-p norm; comparisons of these powers order matrices exactly
/// like the norms themselves.
double norm_power_of_values(const Eigen::VectorXd& singular_values, double p);

/// Norm of a Hermitian matrix via its singular values.
double norm_of_matrix(const HermitianMatrix& mat, const NormSpec& spec);

/// Convenience overload validating hermiticity first.
double norm_of_matrix(const Eigen::MatrixXcd& mat, const NormSpec& spec,
                      double hermiticity_tol = Tolerances{}.hermiticity);

} // namespace lowrankdm
