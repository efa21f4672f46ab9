#pragma once

#include <stdexcept>
#include <string>

namespace pcsp {

/// Input text could not be parsed. Carries the 1-based position of the
/// offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string & what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line),
          column_(column)
    {
    }

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A backtracking search exceeded its node budget. Distinguishable from a
/// definitive negative answer: the search space was not exhausted.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string & what) : std::runtime_error(what) {}
};

/// The promise of a promise problem was violated: some pipeline stage of a
/// promise-assuming solver failed, so the input was not a Yes-instance.
class PromiseViolationError : public std::runtime_error {
public:
    explicit PromiseViolationError(const std::string & what) : std::runtime_error(what) {}
};

/// A certificate failed re-verification. Signals either a bug or a
/// certificate that was not drawn from the claimed polymorphism set.
class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string & what) : std::runtime_error(what) {}
};

} // namespace pcsp
