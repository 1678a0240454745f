#pragma once

#include <stdexcept>
#include <string>

namespace qlag {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A q-Pochhammer or theta factor that must be divided by vanishes.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An argument required to be nonzero is zero.
class ZeroArgument : public Error {
 public:
  using Error::Error;
};

/// A bilateral series is evaluated outside its convergence annulus.
class DivergentSeries : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the region where an identity or formula applies.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters too close to the zero set of a required denominator.
class NonGenericError : public Error {
 public:
  using Error::Error;
};

/// The Weyl denominator of the evaluation point vanishes.
class DegenerateZ : public Error {
 public:
  using Error::Error;
};

/// A lattice sum did not reach its shell-decay target within the radius.
class Unconverged : public Error {
 public:
  using Error::Error;
};

/// Invalid harness configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlag
