// Dimension bookkeeping for filtration strata: Harder-Narasimhan and
// Jordan-Hoelder types along a slope ray, the codimension dichotomy, the
// elliptic-fibration codimension formula and its codim<=1 block
// classification, and the support-locus bounds of the rank-0 reduction.

#pragma once

#include "enr/bigint.hpp"
#include "enr/existence.hpp"
#include "enr/mukai.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enr {

enum class StratumKind { HN_surface, HN_slope, fiber_quotient };

// One factor l_i (r0 + xi0) + (s2_i / 2) rho on a slope ray.
struct SlopeBlock {
    Int l;
    Int s2; // twice the rho coefficient
};

struct StratumType {
    StratumKind kind = StratumKind::HN_surface;
    SlopeClass base;
    std::vector<SlopeBlock> blocks;

    MukaiVector block_vector(size_t i) const;
};

// dim F^n(v1, v2) = dim_N + <v1, v2> + n.
Int filtration_dim(const Int& dim_N, const MukaiVector& v1, const MukaiVector& v2, const Int& n);

// Dimension of one block's moduli, with realizability: squares > 0 are exact,
// isotropic multiples give upper bounds, negative squares are realizable only
// as multiples of the rigid case witness.
struct BlockDim {
    bool realizable = false;
    bool exact = false;
    Int dim = 0;
    std::string tag;
};
BlockDim block_dim(const MukaiVector& block, const SurfaceConfig& cfg);

// Sum of block dims + sum_{i<j} <v_j, v_i> (+ ext2 correction n, default 0).
// When any block dim is only an upper bound the stratum dim inherits that and
// the codimension becomes a lower bound.
struct StratumDim {
    bool realizable = false;
    bool exact = false;          // dim exact (hence codim exact)
    Int dim = 0;                 // value or upper bound
    Int codim = 0;               // value or lower bound
    Int codim_worst_ext2 = 0;    // codim under the worst-case ext2 correction
};
StratumDim hn_stratum_dim(const StratumType& type, const MukaiVector& total,
                          const SurfaceConfig& cfg, const Int& ext2_override = -1);

// All ordered decompositions v = sum v_i (>= 2 factors) with v_i on the slope
// ray, |s2_i| <= height_bound and the chain s2_1/l_1 > s2_2/l_2 > ... strictly
// descending (HN_slope additionally caps the head by the isotropic companion
// slope; HN_surface allows equal ratios, covering Jordan-Hoelder types).
std::vector<StratumType> enumerate_hn_types(const MukaiVector& v, const Int& height_bound,
                                            StratumKind kind);

struct MinCodimReport {
    std::optional<Int> min_codim;     // empty when no realizable type exists
    bool exceptional_shape = false;   // v = 2v0 with <v0^2> = 1
    long long types_total = 0;
    long long types_realizable = 0;
    std::vector<StratumType> achieving; // realizable exact types at the minimum
};

// Minimum codimension over every enumerated type (surface kinds, both strict
// and equal-ratio chains).  Requires <v^2> > 0.
MinCodimReport verify_min_codim(const MukaiVector& v, const Int& height_bound,
                                const SurfaceConfig& cfg);

// Appendix formula: codim = sum_i l_i ((r_i d - r d_i) - 1) for fiber blocks
// (l_i, r_i, d_i); preconditions gcd(r,d)=1, gcd(r_i,d_i)=1, 0 < r_i <= r,
// r_i d - r d_i > 0.
struct FiberBlock {
    Int l, r, d;
};
Int elliptic_codim(const Int& r, const Int& d, const std::vector<FiberBlock>& blocks);

// Fiber blocks k.(0, x e1, y) with Enriques boundary contribution
// C = family_l * k * (x d - r y) - dim M(k u) - floor(family_l / 2) <= max_c,
// where dim M(k u) = floor(k/2) for x odd and k for x even.
struct FlatBlock {
    Int k;    // multiplicity
    Int x, y; // u = (0, x e1, y), gcd(x, y) = 1
    Int ell;  // 1 or 2 (= 2 iff x even)
    Int contribution;
    std::vector<std::string> supports; // "Pi1", "Pi2", "f"
};
std::vector<FlatBlock> flat_boundary_blocks(const Int& r, const Int& d, const Int& family_l,
                                            const Int& max_contribution);

// The codimension-1 boundary divisors of the flat locus for the family
// u = (r, d e2, 0): u1 on each multiple fiber, 2u1 on a full fiber and u2 on a
// full fiber when family_l = 1; only the u1 divisors survive family_l = 2.
struct BoundaryDivisor {
    std::string name;    // D1..D4
    MukaiVector block;   // u1, 2u1 or u2 as a Mukai vector
    std::string support; // "Pi1", "Pi2", "f"
    Int pairing;         // <v, block> for v in the family
};
std::vector<BoundaryDivisor> boundary_divisors(const Int& r, const Int& d, const Int& family_l);

// dim total = 4 L2; dim M1 <= 7/2 L2 - 1; dim M2 <= 4 L2 - 2; both
// codimensions >= 2.  Requires L2 positive and even.
struct SupportBounds {
    Int dim_total;
    Int dim_m1_bound;
    Int dim_m2_bound;
    bool sacca_codim_ok;
};
SupportBounds support_locus_bounds(const Int& L2);

} // namespace enr
