#include <limits>

#include "cgt/cli.hpp"
#include "cgt/errors.hpp"

namespace cgt::cli {

std::uint64_t parse_u64(std::string_view s) {
  const BigInt v = parse_big(s);
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw InputError("'" + std::string(s) + "' does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

std::vector<std::string> parse_word_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    auto comma = s.find(',');
    std::string_view item = s.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<BigInt> parse_big_list(std::string_view s) {
  std::vector<BigInt> out;
  for (const auto& w : parse_word_list(s)) out.push_back(parse_big(w));
  return out;
}

DefectiveSet parse_index_list(std::string_view s) {
  std::vector<ItemIndex> items;
  for (const auto& w : parse_word_list(s)) {
    const std::uint64_t v = parse_u64(w);
    if (v > std::numeric_limits<ItemIndex>::max()) throw InputError("item index too large");
    items.push_back(static_cast<ItemIndex>(v));
  }
  return DefectiveSet(std::move(items));
}

}  // namespace cgt::cli
