#pragma once

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace cointreg {

/// Shortest round-trip decimal text for a double ("nan"/"inf" for non-finite).
std::string format_double(double v);

/// Comma-separated rows, '.' decimal point, LF line endings.
class CsvWriter {
public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string> header);
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);

  template <class... Fields>
  void row(const Fields&... fields)
  {
    bool first = true;
    ((write_field(fields, first)), ...);
    os_ << '\n';
  }

private:
  template <class T>
  void write_field(const T& value, bool& first)
  {
    if (!first)
      os_ << ',';
    first = false;
    if constexpr (std::is_same_v<T, bool>)
      os_ << (value ? '1' : '0');
    else if constexpr (std::is_floating_point_v<T>)
      os_ << format_double(static_cast<double>(value));
    else if constexpr (std::is_integral_v<T>)
      os_ << value;
    else
      os_ << value;
  }

  std::ostream& os_;
};

/// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

} // namespace cointreg
