#pragma once

#include <stdexcept>
#include <string>

namespace amoeba {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension mismatches, out-of-range indices, bad configs.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A documented precondition on the input does not hold.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class EmptySupportError : public Error {
public:
    using Error::Error;
};

class DegenerateSupportError : public Error {
public:
    using Error::Error;
};

/// The Sturm chain lost a remainder to rounding; the count cannot be trusted.
class UnreliableCountError : public Error {
public:
    using Error::Error;
};

class RootFindingFailure : public Error {
public:
    using Error::Error;
};

/// Too many homotopy paths failed for the solution set to be trusted.
class UnreliableSolveError : public Error {
public:
    using Error::Error;
};

/// A solution fell inside the real/non-real ambiguity band.
class AmbiguousClassificationError : public Error {
public:
    using Error::Error;
};

class DegenerateFiberError : public Error {
public:
    using Error::Error;
};

class SamplingFailure : public Error {
public:
    using Error::Error;
};

/// A Monte Carlo run discarded too many trials to be reported as valid.
class InvalidRunError : public Error {
public:
    using Error::Error;
};

}  // namespace amoeba
