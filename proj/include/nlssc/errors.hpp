#pragma once

#include <stdexcept>
#include <string>

namespace nlssc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: unparsable files, inconsistent shapes, out-of-range
/// parameters.
class InputError : public Error {
public:
    using Error::Error;
};

class MalformedInputError : public InputError {
public:
    using InputError::InputError;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class ParameterError : public InputError {
public:
    using InputError::InputError;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

/// Numerical breakdown of an otherwise valid computation.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateKernelError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidFeatureError : public InputError {
public:
    using InputError::InputError;
};

class DegeneratePointError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvariantViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Sylvester pencil too close to singular. Carries min |lambda_i(A) + lambda_j(B)|.
class SingularSystemError : public NumericalError {
public:
    SingularSystemError(const std::string& what, double min_gap)
        : NumericalError(what), min_gap_(min_gap) {}

    double min_gap() const noexcept { return min_gap_; }

private:
    double min_gap_;
};

}  // namespace nlssc
