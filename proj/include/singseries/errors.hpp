#pragma once

#include <stdexcept>
#include <string>

namespace singseries {

// Argument outside the supported domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke an ordering or state precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Evaluation too close to a pole or zero to return a meaningful value.
class IllConditionedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request exceeds the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Values fed to a stream skipped or repeated an index.
class SequencingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Two routes to the same number disagreed beyond rounding.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace singseries
