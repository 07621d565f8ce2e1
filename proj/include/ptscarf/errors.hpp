#pragma once

#include <stdexcept>
#include <string>

namespace ptscarf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input values (non-positive alpha, bad tolerances, oversize matrices).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Parameter outside the domain of an operation (e.g. broken family with c_pt = 0).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Operation requires a different PT regime than the one the parameters are in.
class RegimeError : public Error {
public:
  using Error::Error;
};

/// An sl(2)-exchanged pair cannot be written as (A, B, c_pt).
class RepresentationError : public Error {
public:
  using Error::Error;
};

/// Re(a) <= 0: exp(-int W) does not decay.
class NonNormalizableError : public Error {
public:
  using Error::Error;
};

class GridError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace ptscarf
