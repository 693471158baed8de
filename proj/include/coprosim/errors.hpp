#pragma once

#include <stdexcept>
#include <string>

namespace coprosim {

/// Invalid configuration value, unknown config key, or malformed override.
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive allocation requested on an instance above the enumeration cap.
class AllocationTooLarge : public std::length_error
{
public:
  using std::length_error::length_error;
};

/// A recursion produced a non-finite value.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Load-curve constants admit no continuous calibration.
class CalibrationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written. The message always names the path.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace coprosim
