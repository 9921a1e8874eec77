#pragma once

#include <stdexcept>
#include <string>

namespace lmod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad domain input: invalid stream events, inconsistent partitions,
// scoring preconditions (m = 0, negative omega, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// File / parse problems. Carries the offending line number when known.
class IoError : public Error {
public:
    using Error::Error;
    IoError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

} // namespace lmod
