#include "lowrankdm/spectra.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lowrankdm {

namespace {

double max_abs_entry(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve_hermitian(const Eigen::MatrixXcd& m,
                                                                bool with_vectors) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::eigensolver_failure,
                    "eigendecomposition did not converge");
    }
    return solver;
}

Eigen::VectorXd descending(const Eigen::VectorXd& ascending) {
    return ascending.reverse();
}

} // namespace

HermitianMatrix HermitianMatrix::validate(const Eigen::MatrixXcd& m, double hermiticity_tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << "expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::not_hermitian, msg.str());
    }
    const double deviation = max_abs_entry(m - m.adjoint());
    if (!(deviation <= hermiticity_tol)) {
        std::ostringstream msg;
        msg << "matrix deviates from its adjoint by " << deviation
            << " (tolerance " << hermiticity_tol << ")";
        throw Error(ErrorKind::not_hermitian, msg.str());
    }
    return HermitianMatrix(m);
}

DensityMatrix DensityMatrix::validate(const Eigen::MatrixXcd& m, const Tolerances& tols) {
    HermitianMatrix base = HermitianMatrix::validate(m, tols.hermiticity);
    const double trace = base.matrix().trace().real();
    if (!(std::abs(trace - 1.0) <= tols.trace)) {
        std::ostringstream msg;
        msg << "trace is " << trace << ", expected 1 within " << tols.trace;
        throw Error(ErrorKind::trace_not_one, msg.str());
    }
    const auto solver = solve_hermitian(base.matrix(), false);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (!(min_eig >= -tols.psd)) {
        std::ostringstream msg;
        msg << "smallest eigenvalue is " << min_eig << ", below -" << tols.psd;
        throw Error(ErrorKind::not_psd, msg.str());
    }
    return DensityMatrix(std::move(base));
}

DensityMatrix validate_density(const Eigen::MatrixXcd& m, const Tolerances& tols) {
    return DensityMatrix::validate(m, tols);
}

Spectrum spectral_decompose(const DensityMatrix& state, const Tolerances& tols) {
    const auto solver = solve_hermitian(state.matrix(), true);
    Spectrum spectrum;
    spectrum.eigenvalues = descending(solver.eigenvalues());
    spectrum.eigenvectors = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index j = 0; j < spectrum.eigenvalues.size(); ++j) {
        if (spectrum.eigenvalues[j] < 0.0) {
            spectrum.eigenvalues[j] = 0.0; // validation bounded it by -tols.psd
        }
    }

    const Eigen::Index n = state.dim();
    const double orth_err = max_abs_entry(spectrum.eigenvectors.adjoint() * spectrum.eigenvectors -
                                          Eigen::MatrixXcd::Identity(n, n));
    if (!(orth_err <= tols.orthonormality)) {
        std::ostringstream msg;
        msg << "eigenvector columns deviate from orthonormality by " << orth_err;
        throw Error(ErrorKind::eigensolver_failure, msg.str());
    }
    const Eigen::MatrixXcd rebuilt = spectrum.eigenvectors *
                                     spectrum.eigenvalues.asDiagonal() *
                                     spectrum.eigenvectors.adjoint();
    const double recon_err = max_abs_entry(rebuilt - state.matrix());
    if (!(recon_err <= tols.reconstruction)) {
        std::ostringstream msg;
        msg << "spectral reconstruction deviates by " << recon_err;
        throw Error(ErrorKind::eigensolver_failure, msg.str());
    }
    return spectrum;
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& mat) {
    const auto solver = solve_hermitian(mat.matrix(), false);
    return descending(solver.eigenvalues());
}

Eigen::VectorXd hermitian_singular_values(const HermitianMatrix& mat) {
    Eigen::VectorXd values = hermitian_eigenvalues(mat).cwiseAbs();
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

} // namespace lowrankdm
