#pragma once

#include <array>
#include <cstdint>

namespace bornflea {

// Raw Philox-4x32 block with 10 rounds; exposed for the known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Philox-4x32-10 counter-based generator.  A (seed, stream) pair addresses an
// independent substream, so per-sample draws are reproducible regardless of
// thread scheduling: key <- seed, high counter lanes <- stream, low counter
// lanes count blocks.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_double();                    // uniform in [0,1), 53-bit
  double uniform(double lo, double hi);

 private:
  void refill();
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_;
  int pos_;
};

}  // namespace bornflea
