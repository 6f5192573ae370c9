#pragma once

#include <stdexcept>
#include <string>

namespace hahn {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series, product or telescoping sum hit max_terms before its stopping rule fired.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// A factor of an infinite product vanished, i.e. the deformed exponential has a pole here.
class PoleEncountered : public Error {
 public:
  using Error::Error;
};

/// A denominator factor of a finite product vanished.
class ZeroFactor : public Error {
 public:
  using Error::Error;
};

/// Series argument outside the radius of convergence.
class OutOfRadius : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class NearSingular : public Error {
 public:
  using Error::Error;
};

}  // namespace hahn
