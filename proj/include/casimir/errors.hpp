#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// L(i xi) <= 0: the nonperturbative logarithm has no real value.
class BreakdownError : public DomainError {
public:
    BreakdownError(const std::string& what, double critical_separation)
        : DomainError(what), critical_separation_(critical_separation) {}

    /// Separation (alpha(0)/2)^{1/3} below which the l = 0 term breaks down, in m.
    double critical_separation() const noexcept { return critical_separation_; }

private:
    double critical_separation_;
};

/// Malformed input file. line() is 1-based; 0 means "whole stream".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

    /// Same error, message prefixed with the file it came from.
    ParseError in_file(const std::string& path) const { return ParseError(path + ": " + what(), line_, 0); }

private:
    ParseError(const std::string& full, std::size_t line, int) : std::runtime_error(full), line_(line) {}

    std::size_t line_;
};

/// Quadrature or summation failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
