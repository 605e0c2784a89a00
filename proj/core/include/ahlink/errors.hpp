#ifndef AHLINK_ERRORS_HPP
#define AHLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ahlink {

/// Requested catalog entry exists in the standard but has no defined value
/// (e.g. MCS9 at 2 MHz, single stream).
class NotDefinedError : public std::runtime_error {
public:
    explicit NotDefinedError(const std::string& what) : std::runtime_error(what) {}
};

/// Link budget cannot close: no distance (or rate) satisfies the constraint.
class CoverageError : public std::runtime_error {
public:
    explicit CoverageError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative numeric routine failed to converge within its cap.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario / catalog file syntax error, with position attached.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace ahlink

#endif
