#pragma once

#include "cgt/matrix.hpp"

namespace cgt {

/// Items that appear in no negative test.
DefectiveSet surviving_items(const TestMatrix& m, const OutcomeVector& o);

/// Negative-elimination decoder for d-disjunct matrices: Identified when at
/// most d items survive, Overflow(count) otherwise.
DecodeResult decode_disjunct(const TestMatrix& m, const OutcomeVector& o, unsigned d);

}  // namespace cgt
