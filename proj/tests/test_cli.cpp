#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lowrankdm/cli.hpp"
#include "lowrankdm/norms.hpp"

using namespace lowrankdm;
using nlohmann::json;

namespace {

/// Writes `text` to a fresh file under the build temp dir and returns the path.
std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "cli_test_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

json parse_body(const cli::RunOutcome& outcome) { return json::parse(outcome.body); }

const std::string kDiagExample =
    "3\n"
    "0.5 0 0\n"
    "0 0.3 0\n"
    "0 0 0.2\n";

} // namespace

TEST_CASE("approx reports the worked example with the full envelope") {
    const std::string path = write_temp("diag.txt", kDiagExample);
    cli::RunRequest request;
    request.command = cli::Command::approx;
    request.input_path = path;
    request.k = 2;
    request.spec = NormSpec::trace();
    request.include_matrix = true;

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    CHECK(body["command"] == "approx");
    CHECK(body["version"] == cli::kVersion);
    CHECK(body["inputs"]["k"] == 2);
    CHECK(body["inputs"]["norm"] == "schatten:1");
    CHECK(body["results"]["gamma"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(body["results"]["distance"].get<double>() == doctest::Approx(0.4).epsilon(1e-12));
    REQUIRE(body["results"].contains("approximation"));
    CHECK(body["results"]["approximation"].size() == 3);
    CHECK(body["tolerances"].is_object());
    std::remove(path.c_str());
}

TEST_CASE("distance omits the matrix payload") {
    const std::string path = write_temp("diag2.txt", kDiagExample);
    cli::RunRequest request;
    request.command = cli::Command::distance;
    request.input_path = path;
    request.k = 1;
    request.spec = NormSpec::frobenius();

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    CHECK(body["command"] == "distance");
    CHECK(body["results"].contains("distance"));
    CHECK_FALSE(body["results"].contains("approximation"));
    std::remove(path.c_str());
}

TEST_CASE("farthest emits one csv row per candidate in csv mode") {
    cli::RunRequest request;
    request.command = cli::Command::farthest;
    request.n = 14;
    request.k = 9;
    request.spec = NormSpec::schatten(4.1);
    request.format = cli::OutputFormat::csv;

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    int lines = 0;
    for (const char c : outcome.body) {
        lines += (c == '\n');
    }
    CHECK(lines == 1 + (14 - 9)); // header plus one row per m
    CHECK(outcome.body.rfind("m,distance", 0) == 0);
}

TEST_CASE("farthest json names the argmax") {
    cli::RunRequest request;
    request.command = cli::Command::farthest;
    request.n = 14;
    request.k = 9;
    request.spec = NormSpec::schatten(4.1);

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    CHECK(body["results"]["argmax_m"] == 13);
    CHECK(body["results"]["candidate_distances"].size() == 5);
    CHECK(body["results"]["max_distance"].is_number());
}

TEST_CASE("kyfan-m reports the selector diagnostics") {
    cli::RunRequest request;
    request.command = cli::Command::kyfan_m;
    request.n = 9;
    request.k = 5;
    request.r = 4;

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    CHECK(body["results"]["predicted_m"] == 8);
    CHECK(body["results"]["predicted_value"].get<double>() ==
          doctest::Approx(0.45).epsilon(1e-12));
    CHECK(body["results"]["candidates"].is_array());
    CHECK(body["results"].contains("g_value"));
    CHECK(body["results"].contains("golden_threshold"));
}

TEST_CASE("schatten-class answers the classification question") {
    cli::RunRequest request;
    request.command = cli::Command::schatten_class;
    request.p = 3.0;
    auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    CHECK(parse_body(outcome)["results"]["always_maximally_mixed"] == true);

    request.p = 5.0;
    outcome = cli::run(request);
    CHECK(parse_body(outcome)["results"]["always_maximally_mixed"] == false);
}

TEST_CASE("counterexample reports found or not found") {
    cli::RunRequest request;
    request.command = cli::Command::counterexample;
    request.p = 5.0;
    auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    json body = parse_body(outcome);
    CHECK(body["results"]["found"] == true);
    CHECK(body["results"]["n"] == 6);
    CHECK(body["results"]["k"] == 4);

    request.p = 3.0;
    outcome = cli::run(request);
    body = parse_body(outcome);
    CHECK(body["results"]["found"] == false);
    CHECK_FALSE(body["results"].contains("n"));
}

TEST_CASE("crossing finds the first handover exponent") {
    cli::RunRequest request;
    request.command = cli::Command::crossing;
    request.n = 14;
    request.k = 9;
    request.m1 = 14;
    request.m2 = 13;
    request.bracket_lo = 3.5;
    request.bracket_hi = 4.5;

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    CHECK(body["results"]["p_star"].get<double>() ==
          doctest::Approx(4.00865).epsilon(1e-4));
}

TEST_CASE("crossing with no sign change is a numerical failure") {
    cli::RunRequest request;
    request.command = cli::Command::crossing;
    request.n = 14;
    request.k = 9;
    request.m1 = 12;
    request.m2 = 11;
    request.bracket_lo = 1.0;
    request.bracket_hi = 2.0;

    const auto outcome = cli::run(request);
    CHECK(outcome.exit_code == 2);
    const json body = parse_body(outcome);
    CHECK(body["error"]["kind"] == "NoSignChange");
    CHECK(outcome.body.find('\n') == outcome.body.size() - 1); // single line
}

TEST_CASE("verify closes the loop between formula and search") {
    cli::RunRequest request;
    request.command = cli::Command::verify;
    request.n = 3;
    request.k = 2;
    request.spec = NormSpec::trace();
    request.seed = 7;
    request.oracle.restarts = 6;
    request.oracle.max_iters = 1200;
    request.oracle.threads = 1;

    const auto outcome = cli::run(request);
    REQUIRE(outcome.exit_code == 0);
    const json body = parse_body(outcome);
    const double closed = body["results"]["closed_form"].get<double>();
    const double searched = body["results"]["oracle_value"].get<double>();
    const double gap = body["results"]["gap"].get<double>();
    CHECK(std::abs(gap) == doctest::Approx(std::abs(searched - closed)).epsilon(1e-12));
    CHECK(std::abs(gap) < 1e-5);
    CHECK(body["results"].contains("converged"));
    CHECK(body["inputs"]["seed"] == 7);
}

TEST_CASE("validation failures exit 1 with a single json line") {
    SUBCASE("missing file") {
        cli::RunRequest request;
        request.command = cli::Command::distance;
        request.input_path = "definitely_missing_file.txt";
        request.k = 1;
        request.spec = NormSpec::trace();
        const auto outcome = cli::run(request);
        CHECK(outcome.exit_code == 1);
        const json body = parse_body(outcome);
        CHECK(body["error"]["kind"] == "IoError");
        CHECK(outcome.body.find('\n') == outcome.body.size() - 1);
    }
    SUBCASE("not a state") {
        const std::string path = write_temp("notpsd.txt",
                                            "2\n"
                                            "1.5 0\n"
                                            "0 -0.5\n");
        cli::RunRequest request;
        request.command = cli::Command::distance;
        request.input_path = path;
        request.k = 1;
        request.spec = NormSpec::trace();
        const auto outcome = cli::run(request);
        CHECK(outcome.exit_code == 1);
        CHECK(parse_body(outcome)["error"]["kind"] == "NotPSD");
        std::remove(path.c_str());
    }
    SUBCASE("unparseable matrix") {
        const std::string path = write_temp("garbled.txt", "2\n1 0\nx y\n");
        cli::RunRequest request;
        request.command = cli::Command::approx;
        request.input_path = path;
        request.k = 1;
        request.spec = NormSpec::trace();
        const auto outcome = cli::run(request);
        CHECK(outcome.exit_code == 1);
        CHECK(parse_body(outcome)["error"]["kind"] == "ParseError");
        std::remove(path.c_str());
    }
    SUBCASE("missing required parameter") {
        cli::RunRequest request;
        request.command = cli::Command::farthest; // no n/k supplied
        const auto outcome = cli::run(request);
        CHECK(outcome.exit_code == 1);
        CHECK(parse_body(outcome)["error"]["kind"] == "InvalidArgument");
    }
}

TEST_CASE("error bodies always carry command and version") {
    cli::RunRequest request;
    request.command = cli::Command::kyfan_m;
    request.n = 5;
    request.k = 7; // out of range
    request.r = 1;
    const auto outcome = cli::run(request);
    CHECK(outcome.exit_code == 1);
    const json body = parse_body(outcome);
    CHECK(body["command"] == "kyfan-m");
    CHECK(body["version"] == cli::kVersion);
    CHECK(body["error"]["kind"] == "BadRange");
    CHECK(body["error"]["message"].is_string());
}
