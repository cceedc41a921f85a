#include "lowrankdm/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "lowrankdm/errors.hpp"

namespace lowrankdm {

namespace {

std::optional<double> try_parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+') { // from_chars rejects a leading '+'
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

[[noreturn]] void bad_entry(std::string_view token) {
    std::ostringstream msg;
    msg << "cannot parse matrix entry '" << token << "'";
    throw Error(ErrorKind::parse_error, msg.str());
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

/// True content lines only: blank lines between rows are tolerated.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        for (const char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::complex<double> parse_complex_entry(std::string_view token) {
    if (token.empty()) {
        bad_entry(token);
    }
    if (token.back() != 'j') {
        const auto real = try_parse_double(token);
        if (!real) {
            bad_entry(token);
        }
        return {*real, 0.0};
    }

    const std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that starts the imaginary part (not an exponent
    // sign, not a leading sign).
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            const auto real = try_parse_double(body.substr(0, i));
            std::string_view imag_text = body.substr(i);
            std::optional<double> imag;
            if (imag_text == "+") {
                imag = 1.0;
            } else if (imag_text == "-") {
                imag = -1.0;
            } else {
                imag = try_parse_double(imag_text);
            }
            if (!real || !imag) {
                bad_entry(token);
            }
            return {*real, *imag};
        }
    }
    // Pure imaginary: `imj`, `+j`, `-j`, `j`.
    std::optional<double> imag;
    if (body.empty() || body == "+") {
        imag = 1.0;
    } else if (body == "-") {
        imag = -1.0;
    } else {
        imag = try_parse_double(body);
    }
    if (!imag) {
        bad_entry(token);
    }
    return {0.0, *imag};
}

std::string format_complex_entry(std::complex<double> value) {
    if (value.imag() == 0.0) {
        return format_double(value.real());
    }
    std::string text = format_double(value.real());
    if (!(value.imag() < 0.0)) {
        text += '+';
    }
    text += format_double(value.imag());
    text += 'j';
    return text;
}

Eigen::MatrixXcd read_matrix(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) {
        throw Error(ErrorKind::parse_error, "empty input: expected a dimension line");
    }
    std::istringstream header(line);
    std::string token;
    header >> token;
    std::string extra;
    int n = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (ec != std::errc{} || ptr != token.data() + token.size() || n < 1 || header >> extra) {
        std::ostringstream msg;
        msg << "first line must be a single positive dimension, got '" << line << "'";
        throw Error(ErrorKind::parse_error, msg.str());
    }

    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!next_content_line(in, line)) {
            std::ostringstream msg;
            msg << "expected " << n << " matrix rows, found " << i;
            throw Error(ErrorKind::parse_error, msg.str());
        }
        std::istringstream row(line);
        std::vector<std::string> tokens;
        while (row >> token) {
            tokens.push_back(token);
        }
        if (static_cast<int>(tokens.size()) != n) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << " has " << tokens.size() << " entries, expected " << n
                << ": '" << line << "'";
            throw Error(ErrorKind::parse_error, msg.str());
        }
        for (int j = 0; j < n; ++j) {
            m(i, j) = parse_complex_entry(tokens[j]);
        }
    }
    return m;
}

Eigen::MatrixXcd read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::ostringstream msg;
        msg << "cannot open '" << path << "'";
        throw Error(ErrorKind::io_error, msg.str());
    }
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
    out << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << format_complex_entry(m(i, j));
        }
        out << '\n';
    }
}

} // namespace lowrankdm
