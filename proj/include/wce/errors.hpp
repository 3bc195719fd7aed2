#pragma once

#include <stdexcept>
#include <string>

namespace wce {

/// Operands are not aligned with the measure space they are used on.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid construction parameters (sizes, masses, partitions, tolerances).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A countable space whose tail bound never falls below the requested tolerance.
class NonSummableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neither a convergence nor a divergence certificate could be produced.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Oracle input violates a numerical precondition (non-Hermitian, not PSD, too large).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A verdict combination that the theory rules out was produced.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wce
