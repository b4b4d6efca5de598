#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obswitch {

/// Precondition or argument-range violation (negative times, bad grids, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The numerical scheme failed: NaN/Inf, or the inner iteration did not converge.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Invalid experiment configuration. Carries the offending key and the
/// 1-based line number (0 when the error is not tied to a line).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, std::size_t line, const std::string& message)
        : std::runtime_error(format(key, line, message)), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, std::size_t line, const std::string& message) {
        std::string out = "config error";
        if (line > 0) out += " at line " + std::to_string(line);
        if (!key.empty()) out += " (key '" + key + "')";
        return out + ": " + message;
    }

    std::string key_;
    std::size_t line_;
};

}  // namespace obswitch
