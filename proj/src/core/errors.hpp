#pragma once

#include <stdexcept>
#include <string>

namespace hydrocast {

// I/O failures: missing files, unreadable paths.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: CSV parse failures, contiguity violations, domain errors.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failures: training divergence, non-finite values.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hydrocast
