#pragma once

#include <array>
#include <cstdint>

namespace shaper {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Streams are
/// addressed by (seed, stream) and advance a 64-bit block counter, so any
/// worker can be given its own statistically independent stream and every
/// draw sequence is reproducible bit for bit across platforms.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// 53-bit uniform in [0, 1).
  double uniform01();
  /// Strictly interior uniform in (0, 1); safe under log().
  double uniform_open01();
  /// Unit-mean exponential draw.
  double exponential();
  /// Poisson draw by inversion, chunked so the mean may be large.
  long poisson(double mean);

  /// Raw 10-round block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> out_;
  int index_;
};

}  // namespace shaper
