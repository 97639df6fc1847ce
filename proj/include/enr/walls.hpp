// Deciding "H is general with respect to v": a wall class is eta = rF xi - r
// xiF with 0 < rF < r, (eta^2) < 0 and (eta^2) >= -2 rF (r - rF) Delta(v) (the
// standard discriminant bound; the scale is configurable).  is_general tests H
// against the walls through H-perp exactly (that sublattice is negative
// definite, so the enumeration is complete); candidate_walls lists walls found
// inside an explicit coefficient box for inspection and oracle cross-checks.

#pragma once

#include "enr/bigint.hpp"
#include "enr/gram.hpp"
#include "enr/mukai.hpp"

#include <vector>

namespace enr {

struct WallClass {
    NSClass eta;      // primitive, sign-normalized (first nonzero coordinate > 0)
    Int multiplicity; // realized class is multiplicity * eta
    Int rF;           // rank of the destabilizing subobject
    Int norm;         // (realized eta^2), in [-2 rF (r-rF) Delta(v), -1]
};

struct WallSearchParams {
    long long height = 6;  // coefficient box for the xiF scan
    Rat bound_scale = 1;   // multiplies the discriminant bound
};

// Bounded wall listing; rejects rank < 2 ("no walls") and Delta(v) < 0.
// Deduplicated up to sign, sorted (rF, eta) lexicographically.
std::vector<WallClass> candidate_walls(const MukaiVector& v, const WallSearchParams& params = {});

// Exact: true iff no wall class of v lies in H-perp.
bool is_general(const PolarizationClass& H, const MukaiVector& v, const Rat& bound_scale = 1);

// Deterministic search over positive-cone classes of increasing height for an
// H with is_general(H, v); rank-1 vectors get the first candidate e1 + e2.
PolarizationClass chamber_representative(const MukaiVector& v, const Rat& bound_scale = 1,
                                         long long max_height = 16);

} // namespace enr
