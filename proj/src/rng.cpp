#include "cgt/rng.hpp"

#include "cgt/errors.hpp"

#include <unordered_map>

namespace cgt {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

std::vector<std::uint64_t> Rng::sample_distinct(std::uint64_t universe, std::uint64_t count) {
  if (count > universe) throw InputError("cannot draw more distinct values than the universe holds");
  // Sparse partial Fisher-Yates over a virtual identity permutation.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  auto at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + below(universe - i);
    const std::uint64_t vi = at(i);
    const std::uint64_t vj = at(j);
    swapped[j] = vi;
    out.push_back(vj);
  }
  return out;
}

}  // namespace cgt
