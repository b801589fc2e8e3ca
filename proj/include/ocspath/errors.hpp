#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocspath {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A transition sequence could not be fired at the requested configuration.
struct not_fireable_error : error {
    not_fireable_error(std::size_t step_index, const std::string& what)
        : error(what), step(step_index) {}
    std::size_t step;
};

// Caller violated a documented precondition.
struct precondition_error : error {
    using error::error;
};

// Malformed input document (schema violation, bad reference, parse failure).
struct io_error : error {
    using error::error;
};

// The requested search would exceed the configured memory budget.
struct resource_error : error {
    using error::error;
};

// An internal invariant failed; this is a bug, not a user error.
struct internal_error : error {
    using error::error;
};

inline void internal_check(bool condition, const std::string& what) {
    if (!condition)
        throw internal_error("internal invariant violated: " + what);
}

}  // namespace ocspath
