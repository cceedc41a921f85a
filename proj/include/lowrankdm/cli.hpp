#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lowrankdm/errors.hpp"
#include "lowrankdm/norms.hpp"
#include "lowrankdm/oracle.hpp"
#include "lowrankdm/spectra.hpp"

namespace lowrankdm::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command {
    approx,         ///< closest low-rank state to a matrix file
    distance,       ///< distance only
    farthest,       ///< scan the candidate family for (n, k, norm)
    kyfan_m,        ///< Ky Fan selector for (n, k, r)
    schatten_class, ///< is the maximally mixed state always farthest at p?
    crossing,       ///< exponent where two candidates swap order
    counterexample, ///< search the counterexample families at p
    verify,         ///< closed form vs. search oracle on one state
};

const char* to_string(Command command) noexcept;

enum class OutputFormat { json, csv };

/// One fully-specified invocation. The binary translates argv into this and
/// prints the outcome; tests can call run() directly.
struct RunRequest {
    Command command = Command::approx;
    std::optional<std::string> input_path;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<int> r;
    std::optional<int> m1;
    std::optional<int> m2;
    std::optional<double> p;
    std::optional<NormSpec> spec;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    bool include_matrix = false; ///< approx: also emit the approximation's entries
    double bracket_lo = 1.0;     ///< crossing: exponent bracket
    double bracket_hi = 12.0;
    OracleConfig oracle;         ///< verify: search budget (seed overridden by `seed`)
};

struct RunOutcome {
    int exit_code = 0; ///< 0 success, 1 validation error, 2 numerical failure
    std::string body;  ///< JSON document or CSV table; errors are one JSON line
};

/// Executes a request and renders the report. Never throws: errors become a
/// single-line JSON body plus the matching exit code.
RunOutcome run(const RunRequest& request);

/// Exit code for an Error: 1 for validation kinds, 2 for numerical kinds.
int exit_code_for(const Error& error) noexcept;

} // namespace lowrankdm::cli
