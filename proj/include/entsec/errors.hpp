#pragma once

#include <stdexcept>
#include <string>

namespace entsec {

/// Bad user input: malformed files, invalid flags, contract violations on
/// arguments. CLI exit code 2.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Two independent computation routes disagree, or an invariant that cannot
/// fail in exact arithmetic failed. CLI exit code 3.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A discretized quantity cannot be resolved at the requested mesh or sample
/// count. CLI exit code 4.
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace entsec
