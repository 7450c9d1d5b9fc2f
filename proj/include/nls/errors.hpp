#pragma once

#include <stdexcept>
#include <string>

namespace nls {

/// A precondition on an argument was not met (bad shape, out-of-range index, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Automatic level set initialization produced an empty or full mask.
class InitializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The evolution produced a non-finite value.
class NumericInstability : public std::runtime_error {
public:
    NumericInstability(int iteration, const std::string& what)
        : std::runtime_error(what), iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Reading or writing a file failed, or its contents are malformed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractViolation(message);
}

}  // namespace nls
