#pragma once

#include <stdexcept>
#include <string>

namespace cointreg {

/// A parameter or configuration value violates a documented constraint.
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a meaningful number (empty evaluation
/// set, undefined estimate inside a claimed domain, nonpositive means, ...).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& message)
{
  if (!ok)
    throw InvalidParameter(message);
}

} // namespace cointreg
