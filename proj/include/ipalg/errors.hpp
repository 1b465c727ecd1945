#ifndef IPALG_ERRORS_HPP
#define IPALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ipalg {

// Desk-scale guard tripped. `name()` identifies which guard, so callers
// (and the CLI exit-code mapping) can surface it without string matching.
class guard_error : public std::runtime_error {
public:
    guard_error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Requested operation is not defined for this variant combination.
// Thrown instead of returning a possibly wrong answer.
class unsupported_error : public std::logic_error {
public:
    explicit unsupported_error(const std::string& what) : std::logic_error(what) {}
};

// A library invariant failed. Never a normal result.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ipalg

#endif
