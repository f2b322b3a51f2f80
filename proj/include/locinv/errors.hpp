#pragma once

#include <stdexcept>
#include <string>

namespace locinv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / contract violations.
struct SyntaxError : Error {
    using Error::Error;
};
struct VariableOutOfRange : Error {
    using Error::Error;
};
struct UnsupportedRestriction : Error {
    using Error::Error;
};
struct NotSpanned : Error {
    using Error::Error;
};

// A computation that could not be certified either finite or infinite.
struct UndecidedFiniteness : Error {
    using Error::Error;
};

// Internal bound bugs.  These must never fire on valid input; they exist so
// that a wrong truncation window aborts loudly instead of returning a number.
struct WindowUnstable : Error {
    using Error::Error;
};
struct BoxUnstable : Error {
    using Error::Error;
};

// Disagreement between two routes that must agree (closed form vs cocycle
// computation).  Any occurrence falsifies the build.
struct InternalMismatch : Error {
    using Error::Error;
};

} // namespace locinv
