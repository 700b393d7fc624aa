#pragma once

#include <stdexcept>
#include <string>

namespace fnmix {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chain validation failures.
struct NotStochastic : Error {
    using Error::Error;
};
struct NotReversible : Error {
    using Error::Error;
};
struct ReduciblePeriodic : Error {
    using Error::Error;
};
struct NonPositivePi : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct EigensolverFailure : Error {
    using Error::Error;
};

// A bound or interval was requested outside its hypotheses. These map to
// CLI exit code 2: the result is not wrong, it simply does not apply.
struct PreconditionViolated : Error {
    using Error::Error;
};
struct InsufficientSamples : PreconditionViolated {
    using PreconditionViolated::PreconditionViolated;
};
struct EtaTooLarge : PreconditionViolated {
    using PreconditionViolated::PreconditionViolated;
};
struct MinimumNUnmet : PreconditionViolated {
    MinimumNUnmet(const std::string& msg, double required)
        : PreconditionViolated(msg), required_n(required) {}
    double required_n;
};
struct GapTooSmall : PreconditionViolated {
    using PreconditionViolated::PreconditionViolated;
};

// Data / stream problems.
struct StreamExhausted : Error {
    using Error::Error;
};
struct DataMissing : Error {
    using Error::Error;
};
struct InvalidData : Error {
    using Error::Error;
};

}  // namespace fnmix
