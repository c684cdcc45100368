#pragma once

#include <stdexcept>
#include <string>

namespace lcs {

// Root of the library's exception hierarchy. The CLI maps the three
// families below onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable files.
class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public IoError {
 public:
  using IoError::IoError;
};

// Failures of the numerical machinery itself.
class NumericError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public NumericError {
 public:
  using NumericError::NumericError;
};

class StiffnessError : public NumericError {
 public:
  using NumericError::NumericError;
};

class SolvabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularMatrixError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Query point outside the admissible set U_lambda of a stretch field.
class AdmissibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Query point at (or too close to) a Cauchy-Green singularity.
class SingularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace lcs
