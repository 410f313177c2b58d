#pragma once

#include <stdexcept>
#include <string>

namespace tpgabor {

/// Bad parameters or violated preconditions supplied by the caller.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical check that the theory says cannot fail did fail. Either the
/// window violates the hypotheses or the evaluation has a bug.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tpgabor
