#pragma once

#include <stdexcept>
#include <string>

namespace kb {

// Malformed or unsupported input (PD text, corpus rows, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagram has more than one planar piece where a connected one is required.
class SplitDiagramError : public InputError {
 public:
  using InputError::InputError;
};

// A value needed by a check (e.g. an injected invariant) is not available.
class MissingDataError : public InputError {
 public:
  using InputError::InputError;
};

// A configured crossing ceiling was exceeded.
class CeilingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug, never a valid outcome.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kb
