#include <doctest.h>

#include <algorithm>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "lowrankdm/approx.hpp"
#include "lowrankdm/majorization.hpp"
#include "lowrankdm/norms.hpp"
#include "lowrankdm/random.hpp"
#include "lowrankdm/spectra.hpp"

using namespace lowrankdm;
using test_helpers::diagonal_state;
using test_helpers::thrown_kind;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> entries) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const double e : entries) {
        v[i++] = e;
    }
    return v;
}

DensityMatrix state(std::initializer_list<double> entries) {
    return DensityMatrix::validate(diagonal_state(vec(entries)));
}

int numerical_rank(const DensityMatrix& m) {
    const auto decomp = spectral_decompose(m);
    int rank = 0;
    for (Eigen::Index i = 0; i < decomp.eigenvalues.size(); ++i) {
        if (decomp.eigenvalues[i] > 1e-9) {
            ++rank;
        }
    }
    return rank;
}

} // namespace

TEST_CASE("gamma_shift on hand-checked spectra") {
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(5, 0.2);
    CHECK(gamma_shift(uniform, 2) == doctest::Approx(1.0 / 2 - 1.0 / 5).epsilon(1e-14));
    CHECK(gamma_shift(vec({0.5, 0.3, 0.2}), 2) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(gamma_shift(vec({0.5, 0.3, 0.2}), 3) == 0.0);
    CHECK(gamma_shift(vec({1.0, 0.0, 0.0}), 1) == 0.0);
    CHECK(thrown_kind([&] { gamma_shift(vec({0.5, 0.5}), 0); }) == ErrorKind::bad_rank);
    CHECK(thrown_kind([&] { gamma_shift(vec({0.5, 0.5}), 3); }) == ErrorKind::bad_rank);
}

TEST_CASE("closest_rank_k reproduces the worked 3x3 example") {
    const auto result = closest_rank_k(state({0.5, 0.3, 0.2}), 2, NormSpec::trace());
    CHECK(result.gamma == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(result.distance == doctest::Approx(0.4).epsilon(1e-12));
    const Eigen::VectorXd expected_residual = vec({-0.1, -0.1, 0.2});
    REQUIRE(result.residual_spectrum.size() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(result.residual_spectrum[i] ==
              doctest::Approx(expected_residual[i]).epsilon(1e-12));
    }
    // Kept eigenvalues are shifted up uniformly: (0.6, 0.4, 0).
    const auto decomp = spectral_decompose(result.approximation);
    CHECK(decomp.eigenvalues[0] == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(decomp.eigenvalues[1] == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(decomp.eigenvalues[2] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("full-rank bound returns the input unchanged") {
    SplitMix64 rng(7);
    const DensityMatrix rho = random_density_matrix(4, rng);
    const auto result = closest_rank_k(rho, 4, NormSpec::frobenius());
    CHECK(result.distance == 0.0);
    CHECK(result.gamma == 0.0);
    CHECK((result.approximation.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("states already of low rank project to themselves") {
    SplitMix64 rng(19);
    for (int k = 1; k <= 3; ++k) {
        const DensityMatrix rho = random_low_rank_state(4, k, rng);
        const auto result = closest_rank_k(rho, k, NormSpec::trace());
        CHECK(result.distance <= 1e-9);
        CHECK((result.approximation.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("maximally mixed state distances") {
    // I_4 / 4 with k = 3: gamma = 1/12, kept (1/4 + 1/12) x 3 = 1, residual
    // (-1/12, -1/12, -1/12, 1/4); operator norm -> 1/4.
    const DensityMatrix mixed =
        DensityMatrix::validate(Eigen::MatrixXcd::Identity(4, 4) / 4.0);
    const auto result = closest_rank_k(mixed, 3, NormSpec::operator_norm());
    CHECK(result.distance == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(result.gamma == doctest::Approx(1.0 / 12).epsilon(1e-12));
}

TEST_CASE("the minimizer does not depend on the norm") {
    SplitMix64 rng(3);
    const DensityMatrix rho = random_density_matrix(5, rng);
    const auto base = closest_rank_k(rho, 2, NormSpec::trace());
    for (const NormSpec& spec : {NormSpec::frobenius(), NormSpec::operator_norm(),
                                 NormSpec::schatten(3.5), NormSpec::ky_fan(2)}) {
        const auto other = closest_rank_k(rho, 2, spec);
        CHECK((other.approximation.matrix() - base.approximation.matrix())
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
}

TEST_CASE("the approximation is a valid state of rank at most k") {
    SplitMix64 rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = random_density_matrix(5, rng);
        for (int k = 1; k <= 4; ++k) {
            const auto result = closest_rank_k(rho, k, NormSpec::frobenius());
            CHECK(numerical_rank(result.approximation) <= k);
            // validate() inside DensityMatrix already enforced psd/trace.
            CHECK(result.distance >= 0.0);
        }
    }
}

TEST_CASE("trace-norm distance equals twice the discarded tail") {
    SplitMix64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = random_density_matrix(6, rng);
        const auto decomp = spectral_decompose(rho);
        for (int k = 1; k < 6; ++k) {
            const double tail = decomp.eigenvalues.tail(6 - k).sum();
            CHECK(distance_to_low_rank(decomp.eigenvalues, k, NormSpec::trace()) ==
                  doctest::Approx(2.0 * tail).epsilon(1e-10));
        }
    }
}

TEST_CASE("no sampled low-rank state beats the minimizer in any tested norm") {
    SplitMix64 rng(53);
    const DensityMatrix rho = random_density_matrix(4, rng);
    const int k = 2;
    const auto result = closest_rank_k(rho, k, NormSpec::trace());
    const HermitianMatrix best_residual =
        HermitianMatrix::validate(rho.matrix() - result.approximation.matrix());
    for (int rep = 0; rep < 30; ++rep) {
        const DensityMatrix contender = random_low_rank_state(4, k, rng);
        const HermitianMatrix residual =
            HermitianMatrix::validate(rho.matrix() - contender.matrix());
        for (const NormSpec& spec : {NormSpec::trace(), NormSpec::frobenius(),
                                     NormSpec::operator_norm(), NormSpec::ky_fan(2)}) {
            CHECK(norm_of_matrix(best_residual, spec) <=
                  norm_of_matrix(residual, spec) + 1e-9);
        }
    }
}

TEST_CASE("the optimal residual is dominated by every feasible residual") {
    // The minimizer's residual X - Y* satisfies the every-norm inequality
    // against X - Z for aligned low-rank Z, which usi_dominates certifies.
    SplitMix64 rng(61);
    const DensityMatrix rho = random_density_matrix(4, rng);
    const int k = 2;
    const auto result = closest_rank_k(rho, k, NormSpec::trace());
    const HermitianMatrix best_residual =
        HermitianMatrix::validate(rho.matrix() - result.approximation.matrix());

    const auto decomp = spectral_decompose(rho);
    for (int rep = 0; rep < 20; ++rep) {
        // Aligned contender: random rank-<=k spectrum in the same eigenbasis.
        Eigen::VectorXd weights = Eigen::VectorXd::Zero(4);
        weights.head(k) = random_simplex(k, rng);
        const Eigen::MatrixXcd z = decomp.eigenvectors * weights.asDiagonal() *
                                   decomp.eigenvectors.adjoint();
        const HermitianMatrix residual = HermitianMatrix::validate(rho.matrix() - z);
        CHECK(usi_dominates(best_residual, residual, 1e-7).has_value());
    }
}

TEST_CASE("rank bounds outside [1, n] are rejected") {
    SplitMix64 rng(2);
    const DensityMatrix rho = random_density_matrix(3, rng);
    CHECK(thrown_kind([&] { closest_rank_k(rho, 0, NormSpec::trace()); }) ==
          ErrorKind::bad_rank);
    CHECK(thrown_kind([&] { closest_rank_k(rho, 4, NormSpec::trace()); }) ==
          ErrorKind::bad_rank);
}
