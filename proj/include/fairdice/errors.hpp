#pragma once

#include <stdexcept>
#include <string>

namespace fairdice {

// Precondition violations (bad n, m, malformed partitions, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// Even side count passed to an operation that requires odd n.
class ParityError : public InvalidInput {
public:
    explicit ParityError(const std::string& msg) : InvalidInput(msg) {}
};

// Input outside the range an operation supports (not malformed, just unhandled).
class UnsupportedInput : public InvalidInput {
public:
    explicit UnsupportedInput(const std::string& msg) : InvalidInput(msg) {}
};

}  // namespace fairdice
