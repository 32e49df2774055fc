#pragma once

#include <stdexcept>
#include <string>

namespace cftkit {

/// Invalid arguments or violated preconditions supplied by the caller.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact identity that must hold did not. Carries a human-readable witness.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cftkit
