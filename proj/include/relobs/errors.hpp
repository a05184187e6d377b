#pragma once

#include <stdexcept>
#include <string>

namespace relobs {

/// A model file could not be parsed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation's preconditions were violated (alphabet mismatch, subset
/// requirement, malformed automaton, unknown event, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fixpoint run exceeded its safety iteration cap. The iterations are
/// finitely convergent for regular inputs, so hitting the cap indicates an
/// implementation bug rather than a property of the input.
class IterationLimitError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace relobs
