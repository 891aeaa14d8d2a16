#pragma once

#include <stdexcept>
#include <string>

namespace fsg {

// Malformed or out-of-range input (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured search or enumeration budget ran out (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug (CLI exit code 4).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InputError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw InvariantViolation(msg);
}

}  // namespace fsg
