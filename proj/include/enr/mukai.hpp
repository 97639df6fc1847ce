// Mukai vectors v = (r, xi, s/2) on an Enriques surface and the pairing
// <v,w> = (xi_v . xi_w) - (r_v s_w + r_w s_v)/2.  The half-integer part is
// stored doubled (s = 2a), which turns the membership condition r/2 + a in Z
// into the plain congruence r == s (mod 2).

#pragma once

#include "enr/bigint.hpp"
#include "enr/gram.hpp"

#include <string>
#include <utility>

namespace enr {

struct MukaiVector {
    Int r;
    NSClass xi; // first Chern class; the kx bit rides along and never pairs
    Int s;      // twice the H^4 coefficient

    MukaiVector() : r(0), s(0) {}
    // Throws unless r == s (mod 2).
    MukaiVector(Int rank, NSClass chern, Int s_twice);

    bool operator==(const MukaiVector& o) const { return r == o.r && xi == o.xi && s == o.s; }
    MukaiVector operator+(const MukaiVector& o) const;
    MukaiVector operator-(const MukaiVector& o) const;
    MukaiVector operator-() const;
    MukaiVector operator*(const Int& k) const;

    MukaiVector dual() const { return MukaiVector(r, -xi, s); }
    // Euler characteristic (r + s)/2.
    Int chi() const { return exact_div(r + s, 2); }
};

// (0,0,1): the class of a point.
MukaiVector point_class();
// (1,0,1/2): the class of the structure sheaf.
MukaiVector structure_sheaf_class();

Int mukai_pair(const MukaiVector& v, const MukaiVector& w);
Int mukai_square(const MukaiVector& v);

// gcd(r, c1, s), torsion bit excluded; 1 or 2 for primitive vectors.
Int ell(const MukaiVector& v);

// Largest k with v/k still in the lattice (parity respected); 1 = primitive.
Int lattice_divisibility(const MukaiVector& v);
bool is_primitive(const MukaiVector& v);

// v = (l r0, l xi0, s/2) with gcd(r0, xi0) = 1; requires r_v > 0.
struct SlopeClass {
    Int l;
    Int r0;
    NSClass xi0; // torsion bit cleared
};
SlopeClass slope_decompose(const MukaiVector& v);

// <v^2> + r^2; equals 2 r c2 - (r-1)(c1^2).  Requires r_v > 0.
Int discriminant(const MukaiVector& v);

// Chern data (r, c1, c2) of a class with Mukai vector v; the oracle route for
// the discriminant.  Requires r_v > 0 and integral c2.
struct ChernData {
    Int r;
    NSClass c1;
    Int c2;
};
ChernData chern_from_mukai(const MukaiVector& v);

// The primitive isotropic vector on the ray of (r0, xi0): w = l0(r0 + xi0) +
// a0 rho with a0/l0 = (xi0^2)/(2 r0), l0 minimal.  Requires gcd(r0, xi0) = 1,
// r0 > 0; l0 <= 2 r0 always suffices.
MukaiVector isotropic_companion(const Int& r0, const NSClass& xi0);

// Self-check of the divisibility law r0 | <u, w>; w must be the companion of
// u's slope class.
bool divisibility_check(const MukaiVector& u, const MukaiVector& w);

// v . e^D = (r, xi + rD, a + (xi,D) + r(D^2)/2).
MukaiVector twist(const MukaiVector& v, const NSClass& D);

// v = l u + n e1 + delta + a rho with u = (r0, d e2, 0).
struct EllipticDecomposition {
    Int l;
    Int n;
    NSClass delta; // orthogonal to e1 and e2
    Int s;         // twice the rho coefficient
    MukaiVector base_u;

    MukaiVector recompose() const;
    MukaiVector vector() const { return recompose(); }
};

// Requires r0 even, gcd(r0, d) = 1, r0 | r_v and v orthogonal to (0, r0 e1, d).
EllipticDecomposition elliptic_decompose(const MukaiVector& v, const Int& r0, const Int& d);

// Both sides of <v1,v2> = (l2/2l1)<v1^2> + (l1/2l2)<v2^2>
//                        - (1/2l1l2)<(l2 d1 - l1 d2)^2>, as exact rationals.
std::pair<Rat, Rat> elliptic_pairing_identity(const EllipticDecomposition& v1,
                                              const EllipticDecomposition& v2);

// Text format: (r; [xi]; s) with optional +K inside the bracket.
std::string to_text(const MukaiVector& v);
MukaiVector parse_mukai(const std::string& text);

} // namespace enr
