#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oodlab {

// Base class for every error raised by the library. Callers that only care
// about "something went wrong" catch this; the subclasses exist so tests and
// the CLI can tell the documented failure modes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class GridTooFine : public Error {
 public:
  GridTooFine(double cube_count, double cap)
      : Error("grid too fine: M = " + std::to_string(cube_count) +
              " cubes exceeds cap " + std::to_string(cap)),
        cube_count_(cube_count) {}

  double cube_count() const { return cube_count_; }

 private:
  double cube_count_;
};

class OutsideGrid : public Error {
 public:
  using Error::Error;
};

/// The linear-feasibility solver hit its iteration cap; membership unknown.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

/// Raised in exact-only mode when no closed-form region mass exists.
class ExactUnavailable : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An oracle or domain space violated a structural precondition
/// (non-tree order, overlapping supports, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class AssumptionTooWeak : public Error {
 public:
  using Error::Error;
};

}  // namespace oodlab
