// Lattice-level functors: the (-1)/(-2) reflections attached to a rigid
// vector, the contravariant Fourier-Mukai action on the sublattice where it
// is pinned down, the canonical rank-2 reduction, and the Bezout / Hilbert
// helpers of the elliptic-fibration picture.

#pragma once

#include "enr/bigint.hpp"
#include "enr/mukai.hpp"

#include <optional>
#include <string>

namespace enr {

enum class ReflectionKind { minus1, minus2 };

struct ReflectionSpec {
    MukaiVector v0;
    ReflectionKind kind;

    // Throws unless <v0^2> matches the kind (-1 or -2).
    ReflectionSpec(MukaiVector witness, ReflectionKind k);
};

// R(v) = D(v) + c <D(v), v0^dual> v0^dual with D = dualization and c = 2 for
// minus1, 1 for minus2.  On l v0 - b rho this is the moduli correspondence
// (2br-l) v0^dual - b rho  resp.  (br-l) v0^dual - b rho.
MukaiVector reflect(const ReflectionSpec& spec, const MukaiVector& v);

// The reflection attached to v0^dual; composing reflect(spec) with
// reflect(dual_spec(spec)) is the identity on the whole lattice.  For
// witnesses with xi = 0 the two coincide and reflect is its own inverse.
ReflectionSpec dual_spec(const ReflectionSpec& spec);

struct PsiImage {
    // Present only when v lies in span{(1,0,1/2), (0,e1,0), (0,0,1)} with a
    // trivial torsion bit.
    std::optional<MukaiVector> vector;
    Int rank_after;   // r - 2 (xi, e1)
    Int deg_e1_after; // -(xi, e1)
    Int chi_after;    // (r + s)/2, preserved
    std::string note; // sign/shift convention caveat
};

PsiImage psi_image(const MukaiVector& v);

// Rank-2 canonical form: for primitive even-rank v with <v^2> >= 0 returns
// v' = (2, zeta, s'/2) with the same square (l(v) = 1, zeta the 0/1
// representative of xi mod 2) or v'' = (4, 2(e2+(n+1)e1), 1) with n =
// <v^2>/8 (l(v) = 2).  Square and l(v) are asserted preserved.
MukaiVector canonical_reduce(const MukaiVector& v, const NSClass& L);

struct BezoutPair {
    Int p, q;
    bool direct;                 // p <= r/2
    std::pair<Int, Int> replacement; // (r-p, d-q), meaningful on the dual branch
};

// The unique (p,q) with d p - r q = 1 and 0 < p < r.  Requires r >= 2 and
// gcd(r,d) = 1.
BezoutPair find_pq(const Int& r, const Int& d);

// b = (-chi(e,e) + chi(O_X))/2; rejects odd or negative input.
Int hilb_points(const Int& chi_ee, const Int& chi_O);

// floor(l gcd(r,m) / m).
Int multiple_fiber_bound(const Int& l, const Int& r, const Int& m);

} // namespace enr
