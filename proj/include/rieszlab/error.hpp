#pragma once

#include <stdexcept>
#include <string>

namespace rieszlab {

// Precondition violations throw std::invalid_argument (bad parameters) or
// std::domain_error (argument outside a formula's range of validity).
// The types below cover the remaining failure classes.

/// A computation produced a non-finite or otherwise unusable value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request exceeds a configured size limit (quadrature degree, dense
/// eigensolve dimension, tensor grid size).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized data (expansion text, cache file).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rieszlab
