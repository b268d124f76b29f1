#pragma once

#include <stdexcept>

namespace hyperwalk {

// Malformed input or a parameter out of its documented range.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Well-formed input on which the query has no answer: a disconnected
// structure where connectivity is required, or an ungenerable instance.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hyperwalk
