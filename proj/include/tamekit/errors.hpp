#ifndef TAMEKIT_ERRORS_HPP
#define TAMEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tame {

// Base class for all workbench errors. Subclasses distinguish bad input
// (dimension/field/parse) from verified-negative answers and resource caps,
// so the CLI can map them onto exit codes.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

struct field_mismatch_error : error {
    explicit field_mismatch_error(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct invalid_input_error : error {
    explicit invalid_input_error(const std::string& msg) : error(msg) {}
};

struct resource_error : error {
    explicit resource_error(const std::string& msg) : error(msg) {}
};

// Raised when an internal invariant that should be guaranteed by a verified
// precondition fails (e.g. a residual term depending on its own variable
// inside the approximation step, which signals a non-unit Jacobian input).
struct internal_invariant_error : error {
    explicit internal_invariant_error(const std::string& msg) : error(msg) {}
};

} // namespace tame

#endif
