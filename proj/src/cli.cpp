#include "lowrankdm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lowrankdm/approx.hpp"
#include "lowrankdm/farthest.hpp"
#include "lowrankdm/majorization.hpp"
#include "lowrankdm/matrix_io.hpp"
#include "lowrankdm/random.hpp"

namespace lowrankdm::cli {

namespace {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

/// Complex matrices serialize as rows of [re, im] pairs.
json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json tolerances_to_json(const Tolerances& tols) {
    json out = json::object();
    out["hermiticity"] = tols.hermiticity;
    out["trace"] = tols.trace;
    out["psd"] = tols.psd;
    out["reconstruction"] = tols.reconstruction;
    out["orthonormality"] = tols.orthonormality;
    return out;
}

/// Extended reals can't ride in a JSON number.
json extended_real_to_json(double p) {
    if (std::isinf(p)) {
        return p > 0 ? "inf" : "-inf";
    }
    return p;
}

json inputs_to_json(const RunRequest& request) {
    json out = json::object();
    if (request.input_path) {
        out["input_path"] = *request.input_path;
    }
    if (request.n) {
        out["n"] = *request.n;
    }
    if (request.k) {
        out["k"] = *request.k;
    }
    if (request.r) {
        out["r"] = *request.r;
    }
    if (request.m1) {
        out["m1"] = *request.m1;
    }
    if (request.m2) {
        out["m2"] = *request.m2;
    }
    if (request.p) {
        out["p"] = extended_real_to_json(*request.p);
    }
    if (request.spec) {
        out["norm"] = request.spec->to_string();
    }
    if (request.command == Command::verify) {
        out["seed"] = request.seed;
        out["restarts"] = request.oracle.restarts;
        out["max_iters"] = request.oracle.max_iters;
    }
    if (request.command == Command::crossing) {
        out["bracket"] = json::array({request.bracket_lo, request.bracket_hi});
    }
    return out;
}

void require(bool present, const char* what, Command command) {
    if (!present) {
        std::ostringstream msg;
        msg << to_string(command) << " requires " << what;
        throw Error(ErrorKind::invalid_argument, msg.str());
    }
}

/// key,value table; farthest gets a dedicated m,distance layout instead.
class CsvTable {
public:
    CsvTable() : body_("key,value\n") {}

    void add(const std::string& key, const std::string& value) {
        body_ += key;
        body_ += ',';
        body_ += value;
        body_ += '\n';
    }
    void add(const std::string& key, double value) { add(key, format_double(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
    void add_vector(const std::string& prefix, const Eigen::VectorXd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            add(prefix + "_" + std::to_string(i + 1), v(i));
        }
    }

    std::string take() && { return std::move(body_); }

private:
    std::string body_;
};

struct CommandReport {
    json results = json::object();
    std::string csv;
};

CommandReport run_approx(const RunRequest& request, bool distance_only) {
    const Command command = request.command;
    require(request.input_path.has_value(), "an input matrix file", command);
    require(request.k.has_value(), "--k", command);
    require(request.spec.has_value(), "--norm", command);

    const Eigen::MatrixXcd m = read_matrix_file(*request.input_path);
    const DensityMatrix state = DensityMatrix::validate(m, request.tolerances);
    const ApproxResult result =
        closest_rank_k(state, *request.k, *request.spec, request.tolerances);

    CommandReport report;
    if (distance_only) {
        report.results["distance"] = result.distance;
        CsvTable csv;
        csv.add("distance", result.distance);
        report.csv = std::move(csv).take();
        return report;
    }
    report.results["gamma"] = result.gamma;
    report.results["distance"] = result.distance;
    report.results["residual_spectrum"] = vector_to_json(result.residual_spectrum);
    if (request.include_matrix) {
        report.results["approximation"] = matrix_to_json(result.approximation.matrix());
    }
    CsvTable csv;
    csv.add("gamma", result.gamma);
    csv.add("distance", result.distance);
    csv.add_vector("residual", result.residual_spectrum);
    report.csv = std::move(csv).take();
    return report;
}

CommandReport run_farthest(const RunRequest& request) {
    require(request.n.has_value(), "--n", request.command);
    require(request.k.has_value(), "--k", request.command);
    require(request.spec.has_value(), "--norm", request.command);

    const FarthestReport found = farthest_search(*request.n, *request.k, *request.spec);

    CommandReport report;
    json table = json::array();
    std::string csv = "m,distance\n";
    for (const auto& [m, value] : found.candidate_distances) {
        json entry = json::object();
        entry["m"] = m;
        entry["distance"] = value;
        table.push_back(std::move(entry));
        csv += std::to_string(m);
        csv += ',';
        csv += format_double(value);
        csv += '\n';
    }
    report.results["candidate_distances"] = std::move(table);
    report.results["argmax_m"] = found.argmax_m;
    report.results["max_distance"] = found.max_distance;
    report.results["ties"] = found.ties;
    report.csv = std::move(csv);
    return report;
}

CommandReport run_kyfan_m(const RunRequest& request) {
    require(request.n.has_value(), "--n", request.command);
    require(request.k.has_value(), "--k", request.command);
    require(request.r.has_value(), "--r", request.command);

    const KyFanSelector selector = kyfan_optimal_m(*request.n, *request.k, *request.r);

    CommandReport report;
    report.results["r"] = selector.r;
    report.results["g_value"] = selector.g_value;
    report.results["golden_threshold"] = selector.golden_threshold;
    report.results["candidates"] = selector.candidates;
    report.results["predicted_m"] = selector.predicted_m;
    report.results["predicted_value"] = selector.predicted_value;

    CsvTable csv;
    csv.add("r", selector.r);
    csv.add("g_value", selector.g_value);
    csv.add("golden_threshold", selector.golden_threshold);
    for (std::size_t i = 0; i < selector.candidates.size(); ++i) {
        csv.add("candidate_" + std::to_string(i + 1), selector.candidates[i]);
    }
    csv.add("predicted_m", selector.predicted_m);
    csv.add("predicted_value", selector.predicted_value);
    report.csv = std::move(csv).take();
    return report;
}

CommandReport run_schatten_class(const RunRequest& request) {
    require(request.p.has_value(), "--p", request.command);
    const bool always = schatten_is_always_maxmixed(*request.p);

    CommandReport report;
    report.results["p"] = extended_real_to_json(*request.p);
    report.results["always_maximally_mixed"] = always;

    CsvTable csv;
    csv.add("p", std::isinf(*request.p) ? std::string("inf") : format_double(*request.p));
    csv.add("always_maximally_mixed", always);
    report.csv = std::move(csv).take();
    return report;
}

CommandReport run_crossing(const RunRequest& request) {
    require(request.n.has_value(), "--n", request.command);
    require(request.k.has_value(), "--k", request.command);
    require(request.m1.has_value(), "--m1", request.command);
    require(request.m2.has_value(), "--m2", request.command);

    const double p_star = schatten_crossing(*request.n, *request.k, *request.m1, *request.m2,
                                            request.bracket_lo, request.bracket_hi);
    CommandReport report;
    report.results["p_star"] = p_star;
    CsvTable csv;
    csv.add("p_star", p_star);
    report.csv = std::move(csv).take();
    return report;
}

CommandReport run_counterexample(const RunRequest& request) {
    require(request.p.has_value(), "--p", request.command);
    const std::optional<SchattenCounterexample> found = schatten_counterexample(*request.p);

    CommandReport report;
    CsvTable csv;
    if (found) {
        report.results["found"] = true;
        report.results["n"] = found->n;
        report.results["k"] = found->k;
        report.results["candidate_value"] = found->candidate_value;
        report.results["maxmixed_value"] = found->maxmixed_value;
        report.results["description"] = found->description;
        csv.add("found", true);
        csv.add("n", found->n);
        csv.add("k", found->k);
        csv.add("candidate_value", found->candidate_value);
        csv.add("maxmixed_value", found->maxmixed_value);
    } else {
        report.results["found"] = false;
        csv.add("found", false);
    }
    report.csv = std::move(csv).take();
    return report;
}

CommandReport run_verify(const RunRequest& request) {
    require(request.n.has_value(), "--n", request.command);
    require(request.k.has_value(), "--k", request.command);
    require(request.spec.has_value(), "--norm", request.command);

    SplitMix64 seeder(request.seed);
    SplitMix64 state_rng(seeder.next());
    OracleConfig cfg = request.oracle;
    cfg.seed = seeder.next();

    const DensityMatrix state = random_density_matrix(*request.n, state_rng, request.tolerances);
    const Spectrum spectrum = spectral_decompose(state, request.tolerances);
    const double closed_form = distance_to_low_rank(spectrum.eigenvalues, *request.k, *request.spec);
    const MinDistanceOutcome oracle = oracle_min_distance(state, *request.k, *request.spec, cfg);

    CommandReport report;
    report.results["closed_form"] = closed_form;
    report.results["oracle_value"] = oracle.value;
    report.results["gap"] = oracle.value - closed_form;
    report.results["converged"] = oracle.converged;

    CsvTable csv;
    csv.add("closed_form", closed_form);
    csv.add("oracle_value", oracle.value);
    csv.add("gap", oracle.value - closed_form);
    csv.add("converged", oracle.converged);
    report.csv = std::move(csv).take();
    return report;
}

} // namespace

const char* to_string(Command command) noexcept {
    switch (command) {
        case Command::approx: return "approx";
        case Command::distance: return "distance";
        case Command::farthest: return "farthest";
        case Command::kyfan_m: return "kyfan-m";
        case Command::schatten_class: return "schatten-class";
        case Command::crossing: return "crossing";
        case Command::counterexample: return "counterexample";
        case Command::verify: return "verify";
    }
    return "unknown";
}

int exit_code_for(const Error& error) noexcept {
    return error.is_validation() ? 1 : 2;
}

RunOutcome run(const RunRequest& request) {
    try {
        CommandReport report;
        switch (request.command) {
            case Command::approx: report = run_approx(request, false); break;
            case Command::distance: report = run_approx(request, true); break;
            case Command::farthest: report = run_farthest(request); break;
            case Command::kyfan_m: report = run_kyfan_m(request); break;
            case Command::schatten_class: report = run_schatten_class(request); break;
            case Command::crossing: report = run_crossing(request); break;
            case Command::counterexample: report = run_counterexample(request); break;
            case Command::verify: report = run_verify(request); break;
        }

        RunOutcome outcome;
        outcome.exit_code = 0;
        if (request.format == OutputFormat::csv) {
            outcome.body = std::move(report.csv);
        } else {
            json envelope = json::object();
            envelope["command"] = to_string(request.command);
            envelope["inputs"] = inputs_to_json(request);
            envelope["results"] = std::move(report.results);
            envelope["tolerances"] = tolerances_to_json(request.tolerances);
            envelope["version"] = kVersion;
            outcome.body = envelope.dump(2);
            outcome.body += '\n';
        }
        return outcome;
    } catch (const Error& error) {
        json body = json::object();
        body["command"] = to_string(request.command);
        body["error"] = {{"kind", to_string(error.kind())}, {"message", error.what()}};
        body["version"] = kVersion;
        return RunOutcome{exit_code_for(error), body.dump() + "\n"};
    } catch (const std::exception& unexpected) {
        json body = json::object();
        body["command"] = to_string(request.command);
        body["error"] = {{"kind", "Unexpected"}, {"message", unexpected.what()}};
        body["version"] = kVersion;
        return RunOutcome{2, body.dump() + "\n"};
    }
}

} // namespace lowrankdm::cli
