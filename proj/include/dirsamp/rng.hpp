#pragma once
// Reproducible uniform streams keyed by (seed, stream).

#include <cstdint>
#include <random>

namespace dirsamp {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // [0, 1) with 53 random bits; the conversion is ours so results do not
  // depend on the standard library's distribution implementation.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_, stream_;
  std::mt19937_64 engine_;
};

}  // namespace dirsamp
