#include <doctest.h>

#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "lowrankdm/matrix_io.hpp"
#include "lowrankdm/random.hpp"

using namespace lowrankdm;
using test_helpers::thrown_kind;

TEST_CASE("entry parsing accepts the documented shapes") {
    CHECK(parse_complex_entry("3") == std::complex<double>(3.0, 0.0));
    CHECK(parse_complex_entry("+0.5") == std::complex<double>(0.5, 0.0));
    CHECK(parse_complex_entry("-2.75") == std::complex<double>(-2.75, 0.0));
    CHECK(parse_complex_entry("0.25-0.1j") == std::complex<double>(0.25, -0.1));
    CHECK(parse_complex_entry("1e-3+2.5e-4j") == std::complex<double>(1e-3, 2.5e-4));
    CHECK(parse_complex_entry("j") == std::complex<double>(0.0, 1.0));
    CHECK(parse_complex_entry("-j") == std::complex<double>(0.0, -1.0));
    CHECK(parse_complex_entry("+j") == std::complex<double>(0.0, 1.0));
    CHECK(parse_complex_entry("0.5j") == std::complex<double>(0.0, 0.5));
    CHECK(parse_complex_entry("1+j") == std::complex<double>(1.0, 1.0));
    CHECK(parse_complex_entry("1-j") == std::complex<double>(1.0, -1.0));
}

TEST_CASE("entry parsing rejects malformed tokens") {
    for (const char* bad : {"", "1.2.3", "2+3i", "3+", "j5", "1+2", "++1", "1 2", "nanj+"}) {
        CAPTURE(bad);
        CHECK(thrown_kind([&] { parse_complex_entry(bad); }) == ErrorKind::parse_error);
    }
}

TEST_CASE("entry formatting is minimal and re-parseable") {
    CHECK(format_complex_entry({0.5, 0.0}) == "0.5");
    CHECK(format_complex_entry({0.0, 0.0}) == "0");
    CHECK(parse_complex_entry(format_complex_entry({0.25, -0.1})) ==
          std::complex<double>(0.25, -0.1));
    CHECK(parse_complex_entry(format_complex_entry({0.0, 1.0})) ==
          std::complex<double>(0.0, 1.0));
    CHECK(parse_complex_entry(format_complex_entry({-1.0 / 3.0, 2.0 / 7.0})) ==
          std::complex<double>(-1.0 / 3.0, 2.0 / 7.0));
}

TEST_CASE("matrix reading handles the documented layout") {
    std::istringstream in(
        "2\n"
        "0.5 0.25-0.1j\n"
        "0.25+0.1j 0.5\n");
    const Eigen::MatrixXcd m = read_matrix(in);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == std::complex<double>(0.5, 0.0));
    CHECK(m(0, 1) == std::complex<double>(0.25, -0.1));
    CHECK(m(1, 0) == std::complex<double>(0.25, 0.1));
}

TEST_CASE("matrix reading skips blank lines") {
    std::istringstream in(
        "\n2\n"
        "\n"
        "1 0\n"
        "\n\n"
        "0 1\n");
    const Eigen::MatrixXcd m = read_matrix(in);
    CHECK(m.isApprox(Eigen::MatrixXcd::Identity(2, 2)));
}

TEST_CASE("matrix reading rejects malformed input") {
    auto kind_of = [](const char* text) {
        std::istringstream in(text);
        return thrown_kind([&] { read_matrix(in); });
    };
    CHECK(kind_of("") == ErrorKind::parse_error);                    // no dimension line
    CHECK(kind_of("0\n") == ErrorKind::parse_error);                 // non-positive size
    CHECK(kind_of("-3\n") == ErrorKind::parse_error);
    CHECK(kind_of("two\n1 0\n0 1\n") == ErrorKind::parse_error);     // junk dimension
    CHECK(kind_of("2\n1 0\n") == ErrorKind::parse_error);            // missing row
    CHECK(kind_of("2\n1 0 0\n0 1\n") == ErrorKind::parse_error);     // extra entry
    CHECK(kind_of("2\n1\n0 1\n") == ErrorKind::parse_error);         // short row
    CHECK(kind_of("2\n1 0\n0 1+2i\n") == ErrorKind::parse_error);    // bad token
}

TEST_CASE("write then read reproduces the matrix exactly") {
    SplitMix64 rng(5);
    const Eigen::MatrixXcd original = random_hermitian(4, rng);
    std::stringstream buffer;
    write_matrix(buffer, original);
    const Eigen::MatrixXcd round_trip = read_matrix(buffer);
    REQUIRE(round_trip.rows() == 4);
    CHECK((round_trip - original).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("missing files raise io errors") {
    CHECK(thrown_kind([&] { read_matrix_file("/nonexistent/clearly/missing.txt"); }) ==
          ErrorKind::io_error);
}
