#pragma once
#include <stdexcept>
#include <string>

namespace cplifs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration work (n * m^n terms, word counts, ...) exceeded the configured cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

// An iteration failed to reach its tolerance within the iteration cap.
struct NoConvergence : Error {
    using Error::Error;
};

// Sign check failed at the upper end of a root bracket.
struct BracketFailure : Error {
    using Error::Error;
};

// Two systems cannot be compared (different number of maps).
struct TypeMismatch : Error {
    using Error::Error;
};

struct EmptyList : Error {
    using Error::Error;
};

// Box counts identical at every probed scale and > 1: no scaling signal.
struct DegenerateFit : Error {
    using Error::Error;
};

struct InfeasiblePerturbation : Error {
    using Error::Error;
};

// Closed-form cylinder length disagreed with enumeration.
struct FormulaMismatch : Error {
    using Error::Error;
};

}  // namespace cplifs
