#pragma once

#include <stdexcept>
#include <string>

namespace voa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero in the scalar field") {}
};

// Raised when a mode product would land above the context truncation.
struct TruncationError : Error {
    int required;
    explicit TruncationError(int required_weight)
        : Error("requested component lies above the context truncation; need N >= " +
                std::to_string(required_weight)),
          required(required_weight) {}
};

struct UnsupportedPhaseError : Error {
    explicit UnsupportedPhaseError(const std::string& what) : Error(what) {}
};

struct NonClosureError : Error {
    explicit NonClosureError(const std::string& what) : Error(what) {}
};

struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& what) : Error(what) {}
};

struct BasisDeficiencyError : Error {
    explicit BasisDeficiencyError(const std::string& what) : Error(what) {}
};

struct NonIntegralityError : Error {
    explicit NonIntegralityError(const std::string& what) : Error(what) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

struct UnknownScenarioError : Error {
    explicit UnknownScenarioError(const std::string& name)
        : Error("unknown scenario: " + name) {}
};

}  // namespace voa
