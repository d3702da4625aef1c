#include "cgt/decode.hpp"

#include <string>

#include "cgt/errors.hpp"

namespace cgt {

DefectiveSet surviving_items(const TestMatrix& m, const OutcomeVector& o) {
  if (o.size() != m.t()) {
    throw InputError("outcome length " + std::to_string(o.size()) + " does not match t=" +
                     std::to_string(m.t()));
  }
  std::vector<std::uint8_t> cleared(m.n(), 0);
  for (std::size_t r = 0; r < m.t(); ++r) {
    if (o[r]) continue;
    for (ItemIndex j : m.row(r)) cleared[j] = 1;
  }
  std::vector<ItemIndex> survivors;
  for (std::uint64_t j = 0; j < m.n(); ++j) {
    if (!cleared[j]) survivors.push_back(static_cast<ItemIndex>(j));
  }
  return DefectiveSet(std::move(survivors));
}

DecodeResult decode_disjunct(const TestMatrix& m, const OutcomeVector& o, unsigned d) {
  DefectiveSet survivors = surviving_items(m, o);
  if (survivors.size() <= d) return Identified{std::move(survivors)};
  return Overflow{survivors.size()};
}

}  // namespace cgt
