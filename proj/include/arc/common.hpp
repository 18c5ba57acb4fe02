#pragma once

#include <Eigen/Core>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace arc {

using Eigen::ArrayXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Bad user input: malformed files, out-of-range parameters, contract
/// violations at an API boundary. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse failure in an input file; carries the offending line number.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, std::size_t line)
        : ValidationError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Fixed decimal formatting for report files. One code path for every
/// emitted double keeps reruns byte-identical.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

/// Lossless text form of a double (hex float), for model files that must
/// round-trip bit-exactly.
inline std::string fmt_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

}  // namespace arc
