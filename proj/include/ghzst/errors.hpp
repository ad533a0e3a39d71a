#pragma once

#include <stdexcept>
#include <string>

namespace ghzst {

/// Precondition violated by the caller (non-Hermitian input, bad angle, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix or register dimensions that do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ghzst
