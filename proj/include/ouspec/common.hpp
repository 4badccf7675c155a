#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ouspec {

using Vec = std::vector<double>;

/// Violated precondition or mismatched inputs (caller bug).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical procedure could not certify its result (non-convergence,
/// rank decision ambiguous at tolerance, post-condition check failed).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw contract_error(msg);
}

} // namespace ouspec
