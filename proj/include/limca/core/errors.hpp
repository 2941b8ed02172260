#pragma once

#include <stdexcept>
#include <string>

namespace limca {

// Precondition or input violation (bad word, mismatched alphabet, bad file).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search or enumeration ran out of budget before reaching a verdict.
struct Inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The operation is not defined for this kind of rule.
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A shipped artifact failed its own validation.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace limca
