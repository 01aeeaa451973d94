#pragma once

#include <stdexcept>
#include <string>

namespace summet {

// Malformed user input: bad files, dimension mismatches, out-of-range parameters.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The solver could not continue: singular basis, pivot breakdown, iteration cap.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested mode/parameter combination is not available.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sequence whose proximity denominator vanishes.
struct DegenerateSequence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace summet
