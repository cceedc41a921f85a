#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace lowrankdm {

/// Text format shared by the CLI and the readers below:
///   line 1: the dimension n
///   lines 2..n+1: n whitespace-separated entries each, written as `re` for
///   real values or `re+imj` / `re-imj` for complex ones (e.g. `0.25-0.1j`).

/// Parses one entry. Accepts `re`, `re±imj`, and a bare `±imj`.
/// Throws Error(parse_error) on anything else.
std::complex<double> parse_complex_entry(std::string_view token);

/// Formats one entry with up to 17 significant digits, omitting `+0j`.
std::string format_complex_entry(std::complex<double> value);

/// Reads a matrix in the text format. Throws Error(parse_error) with the
/// offending line on malformed input.
Eigen::MatrixXcd read_matrix(std::istream& in);

/// Opens and reads a matrix file. Throws Error(io_error) when the file
/// cannot be opened.
Eigen::MatrixXcd read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m);

} // namespace lowrankdm
