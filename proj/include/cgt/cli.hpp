#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/bigint.hpp"
#include "cgt/matrix.hpp"

namespace cgt::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2 };

/// Runs one command line (args exclude the program name). Everything the
/// command prints goes to `out`/`err`, so identical arguments give identical
/// bytes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::uint64_t parse_u64(std::string_view s);
std::vector<BigInt> parse_big_list(std::string_view s);
std::vector<std::string> parse_word_list(std::string_view s);
DefectiveSet parse_index_list(std::string_view s);

}  // namespace cgt::cli
