#pragma once

#include <stdexcept>
#include <string>

namespace equilib {

/// Malformed or inconsistent input: unknown labels, ragged tensors,
/// schema violations. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact enumeration would exceed its configured cap. CLI exit code 3.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its stated precondition.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

} // namespace equilib
