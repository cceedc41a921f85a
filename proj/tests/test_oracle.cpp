#include <doctest.h>

#include <functional>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "lowrankdm/approx.hpp"
#include "lowrankdm/norms.hpp"
#include "lowrankdm/oracle.hpp"
#include "lowrankdm/random.hpp"
#include "lowrankdm/spectra.hpp"

using namespace lowrankdm;
using test_helpers::diagonal_state;
using test_helpers::thrown_kind;

namespace {
OracleConfig small_budget() {
    OracleConfig cfg;
    cfg.restarts = 6;
    cfg.max_iters = 1200;
    cfg.threads = 1;
    return cfg;
}
} // namespace

TEST_CASE("oracle reaches zero on states that are already low rank") {
    SplitMix64 rng(17);
    const DensityMatrix rho = random_low_rank_state(4, 2, rng);
    const auto out = oracle_min_distance(rho, 2, NormSpec::trace(), small_budget());
    CHECK(out.value <= 1e-7);
}

TEST_CASE("oracle confirms the worked 3x3 example") {
    Eigen::VectorXd values(3);
    values << 0.5, 0.3, 0.2;
    const DensityMatrix rho = DensityMatrix::validate(diagonal_state(values));
    const auto out = oracle_min_distance(rho, 2, NormSpec::trace(), small_budget());
    CHECK(out.value == doctest::Approx(0.4).epsilon(1e-5));
    // The blind search should land on the closed-form optimum.
    const auto closed = closest_rank_k(rho, 2, NormSpec::trace());
    CHECK(out.value >= closed.distance - 1e-9);
}

TEST_CASE("oracle confirms the maximally mixed operator-norm distance") {
    const DensityMatrix mixed =
        DensityMatrix::validate(Eigen::MatrixXcd::Identity(4, 4) / 4.0);
    const auto out = oracle_min_distance(mixed, 3, NormSpec::operator_norm(), small_budget());
    CHECK(out.value == doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("the reported minimizer is consistent with the reported value") {
    SplitMix64 rng(9);
    const DensityMatrix rho = random_density_matrix(3, rng);
    const auto out = oracle_min_distance(rho, 1, NormSpec::frobenius(), small_budget());
    const double recomputed = norm_of_matrix(
        HermitianMatrix::validate(rho.matrix() - out.minimizer), NormSpec::frobenius());
    CHECK(recomputed == doctest::Approx(out.value).epsilon(1e-10));
}

TEST_CASE("oracle runs are bitwise deterministic") {
    SplitMix64 rng(33);
    const DensityMatrix rho = random_density_matrix(3, rng);
    OracleConfig cfg = small_budget();
    cfg.seed = 99;
    const auto first = oracle_min_distance(rho, 2, NormSpec::trace(), cfg);
    const auto second = oracle_min_distance(rho, 2, NormSpec::trace(), cfg);
    CHECK(first.value == second.value);
    CHECK((first.minimizer - second.minimizer).cwiseAbs().maxCoeff() == 0.0);

    cfg.threads = 3; // scheduling must not change the reduced result
    const auto threaded = oracle_min_distance(rho, 2, NormSpec::trace(), cfg);
    CHECK(threaded.value == first.value);
}

TEST_CASE("max-side oracle recovers known farthest spectra") {
    const int k = 2;
    auto objective = [&](const Eigen::VectorXd& values) {
        return distance_to_low_rank(values, k, NormSpec::trace());
    };
    const auto out = oracle_max_distance(4, objective, small_budget());
    // Trace norm, n = 4, k = 2: the uniform spectrum is farthest at 2*(4-2)/4 = 1.
    CHECK(out.value == doctest::Approx(1.0).epsilon(1e-5));
    REQUIRE(out.spectrum.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK(out.spectrum[i] == doctest::Approx(0.25).epsilon(1e-3));
    }

    auto op_objective = [&](const Eigen::VectorXd& values) {
        return distance_to_low_rank(values, k, NormSpec::operator_norm());
    };
    const auto op_out = oracle_max_distance(4, op_objective, small_budget());
    // Operator norm, n = 4, k = 2: best is the 3-level flat state at 1/3.
    CHECK(op_out.value == doctest::Approx(1.0 / 3).epsilon(1e-5));
}

TEST_CASE("max-side spectrum is descending and sums to one") {
    auto objective = [](const Eigen::VectorXd& values) {
        return distance_to_low_rank(values, 1, NormSpec::frobenius());
    };
    const auto out = oracle_max_distance(5, objective, small_budget());
    CHECK(out.spectrum.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index i = 0; i + 1 < out.spectrum.size(); ++i) {
        CHECK(out.spectrum[i] >= out.spectrum[i + 1]);
    }
}

TEST_CASE("oracle validates its configuration") {
    SplitMix64 rng(1);
    const DensityMatrix rho = random_density_matrix(2, rng);
    OracleConfig bad;
    bad.restarts = 0;
    CHECK(thrown_kind([&] { oracle_min_distance(rho, 1, NormSpec::trace(), bad); }) ==
          ErrorKind::invalid_argument);
    bad = OracleConfig{};
    bad.max_iters = 0;
    CHECK(thrown_kind([&] { oracle_min_distance(rho, 1, NormSpec::trace(), bad); }) ==
          ErrorKind::invalid_argument);
    CHECK(thrown_kind([&] { oracle_min_distance(rho, 0, NormSpec::trace()); }) ==
          ErrorKind::bad_rank);
    CHECK(thrown_kind([&] { oracle_min_distance(rho, 3, NormSpec::trace()); }) ==
          ErrorKind::bad_rank);
    CHECK(thrown_kind([&] {
              oracle_max_distance(0, [](const Eigen::VectorXd&) { return 0.0; });
          }) == ErrorKind::invalid_argument);
    CHECK(thrown_kind([&] { oracle_max_distance(3, nullptr); }) ==
          ErrorKind::invalid_argument);
}
