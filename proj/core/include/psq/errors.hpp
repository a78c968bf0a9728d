#pragma once

#include <stdexcept>

namespace psq {

// A numeric routine failed to reach its accuracy target (e.g. two quadrature
// refinement levels disagree by more than the contract allows).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check contradicted itself. This is a bug trap, not a
// recoverable user error: something that is provably real came out complex,
// two evaluation routes of the same quantity disagreed, etc.
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace psq
