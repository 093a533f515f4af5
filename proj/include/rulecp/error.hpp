#pragma once

#include <stdexcept>
#include <string>

namespace rulecp {

// Base for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments or malformed input data (exit code 2).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Artifact on disk fails to parse or validate (exit code 3).
class SchemaError : public Error {
public:
    using Error::Error;
};

// CCS relabeling produced no +1 points (exit code 4).
class EmptyCcsError : public Error {
public:
    using Error::Error;
};

// A caller broke a documented precondition (e.g. gamma_hat on an unsatisfied rule).
class ContractViolation : public Error {
public:
    using Error::Error;
};

} // namespace rulecp
