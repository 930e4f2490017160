#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sidonkit {

// Element arithmetic left the signed 64-bit range.
class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Arguments outside an operation's mathematical domain (n <= k and friends).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An enumeration would exceed the configured work cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact search refused because the ground set is larger than the exact-mode guard.
class instance_too_large : public resource_error {
public:
    using resource_error::resource_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace sidonkit
