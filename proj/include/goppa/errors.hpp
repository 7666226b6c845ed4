#ifndef GOPPA_ERRORS_HPP
#define GOPPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace goppa {

// Bad user-supplied parameters (non-prime p, r = 2, a = 0 in affine maps, ...).
struct parameter_error : std::invalid_argument {
    explicit parameter_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Request exceeds a configured enumeration/memory budget.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Value outside the mathematical domain of the operation (inv(0), alpha not of
// degree r, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two routes that must agree did not; always indicates a bug, never rounded over.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace goppa

#endif
