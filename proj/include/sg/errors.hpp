#pragma once

#include <stdexcept>
#include <string>

namespace sg {

// Malformed input: unparseable files, bad JSON shape, unknown ids in input text.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates an operation's precondition
// (invalid diagram, unbalanced weighting, p not an odd prime, ...).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap (enumeration size, minor count) would be exceeded.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sg
