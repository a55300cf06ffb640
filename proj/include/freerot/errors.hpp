#pragma once

#include <stdexcept>
#include <string>

namespace freerot {

/// Enumeration or lattice request beyond the configured size limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Request for a moment or cumulant past the truncation order of a spec.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A polynomial, spanning set or elimination grew past its resource cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inference rule was invoked but its side condition does not hold.
class RuleNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The spectral rule refuses to reason about roots it cannot decide exactly.
class SpectralRefusal : public RuleNotApplicable {
 public:
  using RuleNotApplicable::RuleNotApplicable;
};

}  // namespace freerot
