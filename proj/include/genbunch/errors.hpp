#pragma once

#include <stdexcept>
#include <string>

namespace genbunch {

// Caller supplied something that violates a documented precondition.
// The CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A consistency check inside the library failed (normalization, dual-route
// disagreement, monotonicity). The CLI maps this to exit code 1.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw validation_error(what);
}

inline void ensure(bool ok, const std::string& what)
{
    if (!ok) throw internal_error(what);
}

} // namespace detail
} // namespace genbunch
