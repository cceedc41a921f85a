#include "lowrankdm/norms.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace lowrankdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegativeSlack = 1e-12;

/// Clamp tiny negatives, reject real ones, and sort descending.
Eigen::VectorXd prepared_values(const Eigen::VectorXd& singular_values) {
    Eigen::VectorXd values = singular_values;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0) {
            if (values[i] < -kNegativeSlack) {
                std::ostringstream msg;
                msg << "singular values must be nonnegative, got " << values[i];
                throw Error(ErrorKind::invalid_argument, msg.str());
            }
            values[i] = 0.0;
        }
    }
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

double schatten_of_sorted(const Eigen::VectorXd& values, double p) {
    if (values.size() == 0) {
        throw Error(ErrorKind::invalid_argument, "empty singular value vector");
    }
    const double top = values[0];
    if (std::isinf(p)) {
        return top;
    }
    if (top == 0.0) {
        return 0.0;
    }
    if (p == 1.0) {
        return values.sum();
    }
    // Factor out the largest value so big exponents cannot overflow.
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        sum += std::pow(values[i] / top, p);
    }
    return top * std::pow(sum, 1.0 / p);
}

double ky_fan_of_sorted(const Eigen::VectorXd& values, int r) {
    if (r > values.size()) {
        std::ostringstream msg;
        msg << "ky fan order " << r << " exceeds vector length " << values.size();
        throw Error(ErrorKind::invalid_spec, msg.str());
    }
    return values.head(r).sum();
}

std::string format_exponent(double p) {
    if (std::isinf(p)) {
        return "inf";
    }
    char buf[64]; // shortest round-trip form, so parse(to_string()) is exact
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(p);
}

double parse_exponent(std::string_view text) {
    if (text == "inf") {
        return kInf;
    }
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size() || owned.empty()) {
        throw Error(ErrorKind::invalid_spec, "bad schatten exponent '" + owned + "'");
    }
    return value;
}

int parse_order(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::invalid_spec, "bad ky fan order '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

NormSpec NormSpec::schatten(double p) {
    if (std::isnan(p) || p < 1.0) {
        std::ostringstream msg;
        msg << "schatten exponent must be >= 1, got " << p;
        throw Error(ErrorKind::invalid_spec, msg.str());
    }
    return NormSpec(Kind::schatten, p, 0);
}

NormSpec NormSpec::ky_fan(int r) {
    if (r < 1) {
        std::ostringstream msg;
        msg << "ky fan order must be >= 1, got " << r;
        throw Error(ErrorKind::invalid_spec, msg.str());
    }
    return NormSpec(Kind::ky_fan, 0.0, r);
}

NormSpec NormSpec::operator_norm() {
    return schatten(kInf);
}

NormSpec NormSpec::parse(std::string_view text) {
    if (text == "trace") {
        return trace();
    }
    if (text == "frobenius") {
        return frobenius();
    }
    if (text == "operator") {
        return operator_norm();
    }
    constexpr std::string_view schatten_prefix = "schatten:";
    constexpr std::string_view ky_fan_prefix = "kyfan:";
    if (text.substr(0, schatten_prefix.size()) == schatten_prefix) {
        return schatten(parse_exponent(text.substr(schatten_prefix.size())));
    }
    if (text.substr(0, ky_fan_prefix.size()) == ky_fan_prefix) {
        return ky_fan(parse_order(text.substr(ky_fan_prefix.size())));
    }
    throw Error(ErrorKind::invalid_spec,
                "unrecognized norm '" + std::string(text) +
                    "' (expected schatten:<p>, kyfan:<r>, trace, frobenius, or operator)");
}

std::string NormSpec::to_string() const {
    if (is_schatten()) {
        return "schatten:" + format_exponent(p_);
    }
    return "kyfan:" + std::to_string(r_);
}

double norm_of_values(const Eigen::VectorXd& singular_values, const NormSpec& spec) {
    const Eigen::VectorXd values = prepared_values(singular_values);
    if (spec.is_schatten()) {
        return schatten_of_sorted(values, spec.p());
    }
    return ky_fan_of_sorted(values, spec.r());
}

double norm_power_of_values(const Eigen::VectorXd& singular_values, double p) {
    if (std::isnan(p) || std::isinf(p) || p < 1.0) {
        std::ostringstream msg;
        msg << "power comparisons need a finite exponent >= 1, got " << p;
        throw Error(ErrorKind::invalid_spec, msg.str());
    }
    const Eigen::VectorXd values = prepared_values(singular_values);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        sum += std::pow(values[i], p);
    }
    return sum;
}

double norm_of_matrix(const HermitianMatrix& mat, const NormSpec& spec) {
    return norm_of_values(hermitian_singular_values(mat), spec);
}

double norm_of_matrix(const Eigen::MatrixXcd& mat, const NormSpec& spec, double hermiticity_tol) {
    return norm_of_matrix(HermitianMatrix::validate(mat, hermiticity_tol), spec);
}

} // namespace lowrankdm
