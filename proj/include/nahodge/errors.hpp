#pragma once

#include <stdexcept>
#include <string>

namespace nahodge {

/// Raised when an input violates an operation's precondition (bad shape,
/// zero where a unit is required, malformed JSON, ...). The CLI maps it to
/// exit code 1.
class PreconditionError : public std::invalid_argument {
  public:
    explicit PreconditionError(const std::string &what)
        : std::invalid_argument(what) {}
};

/// Raised when an internal identity that should hold by construction fails.
/// The CLI maps it to exit code 2.
class InvariantError : public std::logic_error {
  public:
    explicit InvariantError(const std::string &what)
        : std::logic_error(what) {}
};

inline void require(bool cond, const std::string &what) {
    if (!cond)
        throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string &what) {
    if (!cond)
        throw InvariantError(what);
}

} // namespace nahodge
