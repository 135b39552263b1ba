#pragma once

#include <stdexcept>
#include <string>

namespace bitangent {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain user input (bad text form, non-symmetric tau, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidAronholdSet : public Error {
 public:
  using Error::Error;
};

class OddCharacteristic : public Error {
 public:
  using Error::Error;
};

class EvenCharacteristic : public Error {
 public:
  using Error::Error;
};

class SyzygeticTriple : public Error {
 public:
  using Error::Error;
};

// The following signal a period matrix that is too close to the boundary of
// the Siegel space or to the hyperelliptic locus for the construction.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class RadiusOverflow : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

class SingularSystem : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

class DegenerateDenominator : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

class ZeroMinor : public Error {
 public:
  using Error::Error;
};

class ZeroForm : public Error {
 public:
  using Error::Error;
};

}  // namespace bitangent
