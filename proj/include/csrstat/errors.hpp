#pragma once

#include <stdexcept>
#include <string>

namespace csrstat {

/// Malformed or out-of-contract input (bad files, invalid parameters).
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that cannot produce a finite answer for valid-looking input
/// (zero-mass samples, degenerate marginals, non-finite likelihoods).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace csrstat
