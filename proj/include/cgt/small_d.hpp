#pragma once

#include <cstdint>

#include "cgt/bigint.hpp"
#include "cgt/matrix.hpp"

namespace cgt {

/// Counts outcome bits read by a decoder.
struct ProbeCounter {
  std::uint64_t reads = 0;
};

// Ternary scheme for up to 2 defectives: n = 3^q items, rows <p,v> (digit p
// equals v) for all p, v followed by rows <p,p'> (digits p and p' agree) for
// p < p'.
std::uint64_t d2_test_count(unsigned q);
TestMatrix build_d2_matrix(unsigned q, std::uint64_t effective_n);
DecodeResult decode_d2(const OutcomeVector& o, const SmallDParams& params,
                       ProbeCounter* probes = nullptr);

// Binary pair scheme for up to 3 defectives: n = 2^q items, rows
// <p,p',v,v'> (digit p is v and digit p' is v') for p < p'.
std::uint64_t d3_test_count(unsigned q);
TestMatrix build_d3_matrix(unsigned q, std::uint64_t effective_n);
DecodeResult decode_d3(const OutcomeVector& o, const SmallDParams& params,
                       ProbeCounter* probes = nullptr);

/// Smallest q >= 1 with 3^q >= n.
unsigned d2_min_q(const BigInt& n);
/// Smallest q >= 2 with 2^q >= n.
unsigned d3_min_q(const BigInt& n);

/// Row index of <p,p'> (p < p') among the C(q,2) ordered pairs.
std::size_t pair_rank(unsigned q, unsigned p, unsigned p2);

}  // namespace cgt
