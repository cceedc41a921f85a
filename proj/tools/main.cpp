#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowrankdm/cli.hpp"

namespace {

using lowrankdm::cli::Command;
using lowrankdm::cli::RunRequest;

void print_error_body(const char* command, const char* kind, const std::string& message) {
    nlohmann::json body = nlohmann::json::object();
    if (command != nullptr) {
        body["command"] = command;
    }
    body["error"] = {{"kind", kind}, {"message", message}};
    body["version"] = lowrankdm::cli::kVersion;
    std::cout << body.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closest low-rank density matrix and farthest-state search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lowrankdm::cli::kVersion);

    RunRequest request;
    std::string input_path;
    std::string norm_text = "trace";
    std::string format_text = "json";
    int n = 0;
    int k = 0;
    int r = 0;
    int m1 = 0;
    int m2 = 0;
    double p = 0.0;
    std::vector<double> bracket;

    const char* const norm_help =
        "Norm: trace | frobenius | operator | schatten:<p> | kyfan:<r> (p in [1, inf], inf allowed)";
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "Output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    const auto add_tolerances = [&](CLI::App* sub) {
        sub->add_option("--tol-hermiticity", request.tolerances.hermiticity,
                        "Max Hermiticity defect accepted");
        sub->add_option("--tol-trace", request.tolerances.trace, "Max trace defect accepted");
        sub->add_option("--tol-psd", request.tolerances.psd,
                        "Most negative eigenvalue accepted");
        sub->add_option("--tol-reconstruction", request.tolerances.reconstruction,
                        "Max eigendecomposition reconstruction defect");
        sub->add_option("--tol-orthonormality", request.tolerances.orthonormality,
                        "Max eigenvector orthonormality defect");
    };

    CLI::App* approx = app.add_subcommand(
        "approx", "Closest rank-<= k state to the matrix in FILE: shift, distance, residual spectrum");
    approx->add_option("file", input_path, "Matrix file (line 1: n; then n rows of entries)")
        ->required();
    approx->add_option("--k", k, "Rank bound")->required();
    approx->add_option("--norm", norm_text, norm_help);
    approx->add_flag("--with-matrix", request.include_matrix,
                     "Also emit the approximating matrix (JSON output only)");
    add_format(approx);
    add_tolerances(approx);

    CLI::App* distance = app.add_subcommand(
        "distance", "Distance from the matrix in FILE to the rank-<= k states");
    distance->add_option("file", input_path, "Matrix file")->required();
    distance->add_option("--k", k, "Rank bound")->required();
    distance->add_option("--norm", norm_text, norm_help);
    add_format(distance);
    add_tolerances(distance);

    CLI::App* farthest = app.add_subcommand(
        "farthest", "Scan the flat-spectrum candidates I_m/m for the state farthest from rank <= k");
    farthest->add_option("--n", n, "Dimension")->required();
    farthest->add_option("--k", k, "Rank bound")->required();
    farthest->add_option("--norm", norm_text, norm_help);
    add_format(farthest);

    CLI::App* kyfan_m = app.add_subcommand(
        "kyfan-m", "Predict the optimal candidate level count under the Ky Fan r-norm");
    kyfan_m->add_option("--n", n, "Dimension")->required();
    kyfan_m->add_option("--k", k, "Rank bound")->required();
    kyfan_m->add_option("--r", r, "Ky Fan order")->required();
    add_format(kyfan_m);

    CLI::App* schatten_class = app.add_subcommand(
        "schatten-class", "Is the flattest spectrum always farthest under the Schatten p-norm?");
    schatten_class->add_option("--p", p, "Schatten exponent (inf allowed)")->required();
    add_format(schatten_class);

    CLI::App* crossing = app.add_subcommand(
        "crossing", "Exponent where candidates m1 and m2 swap order under the Schatten p-norm");
    crossing->add_option("--n", n, "Dimension")->required();
    crossing->add_option("--k", k, "Rank bound")->required();
    crossing->add_option("--m1", m1, "First candidate level count")->required();
    crossing->add_option("--m2", m2, "Second candidate level count")->required();
    crossing->add_option("--bracket", bracket, "Exponent bracket [lo, hi]")->expected(2);
    add_format(crossing);

    CLI::App* counterexample = app.add_subcommand(
        "counterexample", "Search for a state farther from rank <= k than the maximally mixed one");
    counterexample->add_option("--p", p, "Schatten exponent (finite)")->required();
    add_format(counterexample);

    CLI::App* verify = app.add_subcommand(
        "verify", "Closed-form distance vs. independent numerical search on a random seeded state");
    verify->add_option("--n", n, "Dimension")->required();
    verify->add_option("--k", k, "Rank bound")->required();
    verify->add_option("--norm", norm_text, norm_help);
    verify->add_option("--seed", request.seed, "Seed for the state and the search")
        ->envname("LOWRANKDM_SEED");
    verify->add_option("--restarts", request.oracle.restarts, "Search restarts");
    verify->add_option("--max-iters", request.oracle.max_iters, "Iterations per restart");
    verify->add_option("--threads", request.oracle.threads, "Worker threads (0 = all cores)");
    add_format(verify);
    add_tolerances(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help / --version
    } catch (const CLI::ParseError& e) {
        print_error_body(nullptr, "InvalidArgument", e.what());
        return 1;
    }

    const std::pair<CLI::App*, Command> table[] = {
        {approx, Command::approx},         {distance, Command::distance},
        {farthest, Command::farthest},     {kyfan_m, Command::kyfan_m},
        {schatten_class, Command::schatten_class}, {crossing, Command::crossing},
        {counterexample, Command::counterexample}, {verify, Command::verify},
    };
    CLI::App* fired = nullptr;
    for (const auto& [sub, command] : table) {
        if (app.got_subcommand(sub)) {
            request.command = command;
            fired = sub;
            break;
        }
    }

    const auto option_count = [&](const char* name) -> std::size_t {
        const CLI::Option* option = fired->get_option_no_throw(name);
        return option != nullptr ? option->count() : 0;
    };
    try {
        if (option_count("file") > 0) {
            request.input_path = input_path;
        }
        if (option_count("--n") > 0) {
            request.n = n;
        }
        if (option_count("--k") > 0) {
            request.k = k;
        }
        if (option_count("--r") > 0) {
            request.r = r;
        }
        if (option_count("--m1") > 0) {
            request.m1 = m1;
        }
        if (option_count("--m2") > 0) {
            request.m2 = m2;
        }
        if (option_count("--p") > 0) {
            request.p = p;
        }
        if (fired->get_option_no_throw("--norm") != nullptr) {
            request.spec = lowrankdm::NormSpec::parse(norm_text);
        }
        if (bracket.size() == 2) {
            request.bracket_lo = bracket[0];
            request.bracket_hi = bracket[1];
        }
        request.format = format_text == "csv" ? lowrankdm::cli::OutputFormat::csv
                                              : lowrankdm::cli::OutputFormat::json;
    } catch (const lowrankdm::Error& e) {
        print_error_body(lowrankdm::cli::to_string(request.command),
                         lowrankdm::to_string(e.kind()), e.what());
        return lowrankdm::cli::exit_code_for(e);
    }

    const lowrankdm::cli::RunOutcome outcome = lowrankdm::cli::run(request);
    std::cout << outcome.body;
    return outcome.exit_code;
}
