// Brute-force coefficient-box scans over the NS lattice.  These back the
// documented-bound mode of enumerate_norm_range and serve as the independent
// grid oracle for the exact enumerator and the wall search.  The innermost
// coordinate row is retired by the dispatched qsweep kernel.

#pragma once

#include "enr/bigint.hpp"
#include "enr/gram.hpp"

#include <cstdint>
#include <vector>

namespace enr {

// (x, functional) == value
struct LinearConstraint {
    NSClass functional;
    Int value;
};

struct BoxSpec {
    long long height = 0;            // coefficient box |x_i| <= height
    Int lo = 0, hi = 0;              // norm window lo <= (x^2) <= hi
    std::vector<int> active;         // active coordinates (empty = all ten)
    std::vector<LinearConstraint> constraints;
};

// All box points in the window, coordinates in ascending lexicographic order
// over the active coordinates.  threads = 0 picks the hardware count.
std::vector<NSClass> box_scan(const BoxSpec& spec, int threads = 0);
std::uint64_t box_count(const BoxSpec& spec, int threads = 0);

} // namespace enr
