#pragma once

#include <stdexcept>
#include <string>

namespace tgmaps {

/// A configured enumeration or sampling bound was exceeded.
class BoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An input object violates a structural precondition (not a one-face map,
/// label increments outside {-1,0,1}, non-linear elimination step, ...).
class StructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tgmaps
