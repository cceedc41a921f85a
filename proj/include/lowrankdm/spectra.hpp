#pragma once

#include <Eigen/Dense>

#include "lowrankdm/errors.hpp"

namespace lowrankdm {

/// Numerical tolerances used by validation and decomposition.
struct Tolerances {
    double hermiticity = 1e-10;    ///< max entrywise |M - M^dagger|
    double trace = 1e-10;          ///< |trace - 1|
    double psd = 1e-9;             ///< eigenvalues >= -psd; negatives above this are clipped to 0
    double reconstruction = 1e-8;  ///< max entrywise |V diag(w) V^dagger - M|
    double orthonormality = 1e-8;  ///< max entrywise |V^dagger V - I|
};

/// A square complex matrix checked to be Hermitian within tolerance.
class HermitianMatrix {
public:
    /// Throws Error(not_hermitian) if the matrix is not square or deviates
    /// from its adjoint by more than hermiticity_tol in any entry.
    static HermitianMatrix validate(const Eigen::MatrixXcd& m,
                                    double hermiticity_tol = Tolerances{}.hermiticity);

    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return entries_.rows(); }

private:
    explicit HermitianMatrix(Eigen::MatrixXcd m) : entries_(std::move(m)) {}
    Eigen::MatrixXcd entries_;
};

/// A Hermitian, positive-semidefinite, unit-trace matrix (a quantum state).
class DensityMatrix {
public:
    /// Validation order: hermiticity -> trace -> positive semidefiniteness.
    /// Throws Error(not_hermitian | trace_not_one | not_psd) accordingly.
    static DensityMatrix validate(const Eigen::MatrixXcd& m, const Tolerances& tols = {});

    [[nodiscard]] const HermitianMatrix& hermitian() const noexcept { return base_; }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return base_.matrix(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return base_.dim(); }

private:
    explicit DensityMatrix(HermitianMatrix base) : base_(std::move(base)) {}
    HermitianMatrix base_;
};

/// Eigenvalues sorted descending with matching orthonormal eigenvector columns.
struct Spectrum {
    Eigen::VectorXd eigenvalues;   ///< descending
    Eigen::MatrixXcd eigenvectors; ///< column j pairs with eigenvalues[j]
};

/// Convenience free-function form of DensityMatrix::validate.
DensityMatrix validate_density(const Eigen::MatrixXcd& m, const Tolerances& tols = {});

/// Full eigendecomposition of a state. Eigenvalues come back descending;
/// tiny negatives (within -tols.psd of zero) are clipped to 0. The result is
/// checked against the reconstruction and orthonormality tolerances and an
/// Error(eigensolver_failure) is thrown if either check fails.
Spectrum spectral_decompose(const DensityMatrix& state, const Tolerances& tols = {});

/// Eigenvalues of a Hermitian matrix, descending, no clipping.
Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& mat);

/// Singular values of a Hermitian matrix: absolute eigenvalues, descending.
Eigen::VectorXd hermitian_singular_values(const HermitianMatrix& mat);

} // namespace lowrankdm
