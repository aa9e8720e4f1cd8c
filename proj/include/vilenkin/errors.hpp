#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

/// A mask whose support does not close to an elementary set, or whose shifted
/// copies overlap: the refinable function it would define cannot have
/// orthonormal shifts.
struct MaskError : std::runtime_error {
    explicit MaskError(const std::string& what) : std::runtime_error(what) {}
};

/// Two routes that must agree (closed form vs. brute force, solve vs.
/// re-evaluation) did not.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search (enumeration, min-height) exceeded its budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or serialized object.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vilenkin
