#include "cointreg/io.hpp"

#include <cmath>
#include <cstdio>

namespace cointreg {

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<std::string> header)
  : CsvWriter(os, std::vector<std::string>(header))
{
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os)
{
  for (std::size_t i = 0; i < header.size(); ++i)
    os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

std::string fnv1a_hex(const std::string& bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace cointreg
