#pragma once

#include <stdexcept>
#include <string>

namespace qtel {

// Thrown when a documented precondition is violated. Callers that forward
// user input (CLI, JSON loaders) map this to a usage error.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw ContractViolation(msg);
}

} // namespace qtel
