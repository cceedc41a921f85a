#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "lowrankdm/errors.hpp"

namespace test_helpers {

/// Kind of the Error thrown by fn, or nullopt when nothing was thrown —
/// lets CHECKs assert both "it throws" and "with the right kind" at once.
template <typename Fn>
std::optional<lowrankdm::ErrorKind> thrown_kind(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const lowrankdm::Error& error) {
        return error.kind();
    }
    return std::nullopt;
}

inline Eigen::MatrixXcd diagonal_state(const Eigen::VectorXd& values) {
    const Eigen::MatrixXcd m = values.cast<std::complex<double>>().asDiagonal();
    return m;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace test_helpers
