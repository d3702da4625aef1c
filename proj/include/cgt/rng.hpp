#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cgt {

/// Name serialized into rw matrix params so files record how they were made.
inline constexpr const char* kGeneratorName = "mt19937_64+splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

/// Portable seeded generator. std::mt19937_64 output is fixed by the
/// standard; bounded draws use rejection sampling rather than
/// std::uniform_int_distribution, whose mapping varies between libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream keyed by (seed, stream).
  static Rng substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// `count` distinct values from [0, universe), in draw order.
  std::vector<std::uint64_t> sample_distinct(std::uint64_t universe, std::uint64_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cgt
