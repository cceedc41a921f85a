#include "lowrankdm/errors.hpp"

namespace lowrankdm {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::not_hermitian: return "NotHermitian";
        case ErrorKind::not_psd: return "NotPSD";
        case ErrorKind::trace_not_one: return "TraceNotOne";
        case ErrorKind::eigensolver_failure: return "EigensolverFailure";
        case ErrorKind::invalid_spec: return "InvalidSpec";
        case ErrorKind::length_mismatch: return "LengthMismatch";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::bad_rank: return "BadRank";
        case ErrorKind::bad_range: return "BadRange";
        case ErrorKind::no_sign_change: return "NoSignChange";
        case ErrorKind::internal_inconsistency: return "InternalInconsistency";
        case ErrorKind::non_convergence: return "NonConvergence";
        case ErrorKind::parse_error: return "ParseError";
        case ErrorKind::io_error: return "IoError";
        case ErrorKind::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

bool Error::is_validation() const noexcept {
    switch (kind_) {
        case ErrorKind::not_hermitian:
        case ErrorKind::not_psd:
        case ErrorKind::trace_not_one:
        case ErrorKind::invalid_spec:
        case ErrorKind::length_mismatch:
        case ErrorKind::dimension_mismatch:
        case ErrorKind::bad_rank:
        case ErrorKind::bad_range:
        case ErrorKind::parse_error:
        case ErrorKind::io_error:
        case ErrorKind::invalid_argument:
            return true;
        case ErrorKind::eigensolver_failure:
        case ErrorKind::no_sign_change:
        case ErrorKind::internal_inconsistency:
        case ErrorKind::non_convergence:
            return false;
    }
    return false;
}

} // namespace lowrankdm
