#pragma once

#include <stdexcept>
#include <string>

namespace dw {

/** Input fails a structural or domain precondition (bad gluing table,
 *  non-coprime fiber, malformed file, ...). CLI exit code 1. */
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/** An internal cross-check failed: two routes that must agree did not.
 *  Never expected on valid builds; CLI exit code 2. */
class SelfCheckError : public std::logic_error {
public:
    explicit SelfCheckError(const std::string& msg) : std::logic_error(msg) {}
};

/** Work refused because it exceeds an explicit size budget. CLI exit code 3. */
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dw
