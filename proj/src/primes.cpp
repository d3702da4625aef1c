#include "cgt/primes.hpp"

namespace cgt {

std::uint64_t PrimeStream::next() {
  while (true) {
    const std::uint64_t q = candidate_++;
    auto it = witnesses_.find(q);
    if (it == witnesses_.end()) {
      witnesses_[q * q].push_back(q);
      return q;
    }
    for (std::uint64_t p : it->second) witnesses_[q + p].push_back(p);
    witnesses_.erase(it);
  }
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  PrimeStream stream;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(stream.next());
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace cgt
