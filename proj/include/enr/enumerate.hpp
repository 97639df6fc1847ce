// Exact enumeration of lattice classes in a norm window.
//
// With linear constraints whose joint kernel is negative definite the
// enumeration is complete (Fincke-Pohst over an exact rational LDL^T); this is
// how fixed-norm classes such as the E8(-1) roots and the wall classes
// orthogonal to a polarization are produced.
//
// Without such constraints the solution set is infinite in the hyperbolic
// directions, so the query must carry an explicit bound: the two U
// coordinates are scanned over |a|,|b| <= hyperbolic_bound and the E8(-1)
// block (always negative definite) is still enumerated exactly.  Results are
// complete within the stated bound, which is reported back verbatim.

#pragma once

#include "enr/bigint.hpp"
#include "enr/boxscan.hpp"
#include "enr/gram.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace enr {

struct NormRangeQuery {
    Int lo = 0, hi = 0;
    std::vector<LinearConstraint> constraints;
    // Required when the constraint kernel is not negative definite.
    std::optional<long long> hyperbolic_bound;
};

// Classes x with lo <= (x^2) <= hi satisfying every constraint, each exactly
// once, sorted lexicographically by coordinates.
std::vector<NSClass> enumerate_norm_range(const NormRangeQuery& q);

// Visitor form (unsorted, deterministic internal order); return false from the
// visitor to stop early.
using NSVisitor = std::function<bool(const NSClass&)>;
void enumerate_norm_range_visit(const NormRangeQuery& q, const NSVisitor& visit);

// Integer points t of the affine quadratic q(t) = t'At + 2b't + c (A negative
// definite, m = dim(A)) with lo <= q(t) <= hi.  Exposed for tests.
std::vector<std::vector<Int>> fp_enumerate(const std::vector<std::vector<Rat>>& A,
                                           const std::vector<Rat>& b, const Rat& c,
                                           const Rat& lo, const Rat& hi);

// True when the symmetric rational matrix is negative definite.
bool is_negative_definite(const std::vector<std::vector<Rat>>& A);

// Integer solutions of M x = t: a particular solution and a basis of the
// integer kernel (columns).  Returns false when no integral solution exists.
bool solve_integer_affine(const std::vector<std::vector<Int>>& M, const std::vector<Int>& t,
                          std::vector<Int>& particular, std::vector<std::vector<Int>>& kernel);

} // namespace enr
