#include "cointreg/rng.hpp"

#include <cmath>

namespace cointreg {

std::uint64_t mix64(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(const StreamId& id)
{
  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  return mix64(mix64(id.seed) + golden * (id.index + 1));
}

double RngStream::normal()
{
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::exponential()
{
  return -std::log(uniform());
}

} // namespace cointreg
