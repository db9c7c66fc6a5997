#pragma once

#include <stdexcept>
#include <string>

namespace critline {

// Malformed user input: asymmetric Gram matrices, bad dimensions, unparsable
// form text, non-unimodular transforms. CLI maps this to exit code 2.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numeric contract violations: evaluator envelopes, pole/zero guards,
// enumeration budgets. CLI maps this to exit code 3.
struct numeric_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Filesystem problems and cache corruption (header/digest mismatch,
// lock conflicts). CLI maps this to exit code 4.
struct io_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace critline
