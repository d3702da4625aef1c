#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cgt/matrix.hpp"

namespace cgt {

// CGT1 line-oriented text format:
//   CGT1
//   method=<crs|rw|d2|d3|custom>
//   n=<int> t=<int> d=<int>
//   params=<key=value;...>
//   one line per row: space-separated sorted column indices

std::string format_params(const TestMatrix& m);
void write_matrix(std::ostream& os, const TestMatrix& m);
TestMatrix read_matrix(std::istream& is);

void save_matrix(const std::filesystem::path& path, const TestMatrix& m);
TestMatrix load_matrix(const std::filesystem::path& path);

void save_outcomes(const std::filesystem::path& path, const OutcomeVector& o);
OutcomeVector load_outcomes(const std::filesystem::path& path);

}  // namespace cgt
