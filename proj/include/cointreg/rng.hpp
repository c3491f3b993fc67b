#pragma once

#include <cstdint>
#include <random>

namespace cointreg {

/// Identifies one independent random stream: a global seed plus a stream index.
///
/// The generator state is derived by a fixed splitting function,
///
///     key = mix64(mix64(seed) + golden * (index + 1))
///
/// where mix64 is the splitmix64 finaliser and golden = 0x9E3779B97F4A7C15.
/// The key seeds a std::mt19937_64, whose output sequence is fixed by the
/// standard, so (seed, index) determines every draw bit-for-bit on any
/// conforming platform.
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  /// Stream index for a two-level task id (e.g. sample-size index, replication).
  static StreamId for_task(std::uint64_t seed, std::uint32_t outer, std::uint32_t inner)
  {
    return {seed, (static_cast<std::uint64_t>(outer) << 32) | inner};
  }
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t derive_key(const StreamId& id);

/// A single-owner random stream. Not safe to share across threads.
///
/// Variates are produced with hand-written transforms rather than the
/// <random> distribution classes, whose algorithms are implementation-defined.
class RngStream {
public:
  explicit RngStream(const StreamId& id) : engine_(derive_key(id)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform()
  {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Unit-rate exponential.
  double exponential();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace cointreg
