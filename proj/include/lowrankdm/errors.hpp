#pragma once

#include <stdexcept>
#include <string>

namespace lowrankdm {

/// Machine-readable failure categories. Validation kinds signal bad input or
/// a violated precondition; the remaining kinds signal numerical failures.
enum class ErrorKind {
    not_hermitian,
    not_psd,
    trace_not_one,
    eigensolver_failure,
    invalid_spec,
    length_mismatch,
    dimension_mismatch,
    bad_rank,
    bad_range,
    no_sign_change,
    internal_inconsistency,
    non_convergence,
    parse_error,
    io_error,
    invalid_argument,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// true for input/contract violations (CLI exit code 1),
    /// false for numerical failures (CLI exit code 2).
    [[nodiscard]] bool is_validation() const noexcept;

private:
    ErrorKind kind_;
};

} // namespace lowrankdm
