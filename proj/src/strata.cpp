#include "enr/strata.hpp"

#include <algorithm>

namespace enr {

MukaiVector StratumType::block_vector(size_t i) const {
    const SlopeBlock& b = blocks.at(i);
    return MukaiVector(b.l * base.r0, base.xi0 * b.l, b.s2);
}

Int filtration_dim(const Int& dim_N, const MukaiVector& v1, const MukaiVector& v2, const Int& n) {
    if (n < 0) throw std::domain_error("filtration_dim: n must be nonnegative");
    return dim_N + mukai_pair(v1, v2) + n;
}

BlockDim block_dim(const MukaiVector& block, const SurfaceConfig& cfg) {
    BlockDim out;
    Int sq = mukai_square(block);
    if (sq > 0) {
        out.realizable = true;
        out.exact = true;
        out.dim = sq;
        out.tag = "square";
        return out;
    }
    if (sq == 0) {
        Int k = lattice_divisibility(block);
        MukaiVector w(exact_div(block.r, k), block.xi.divided_by(k), exact_div(block.s, k));
        Int lw = ell(w);
        out.realizable = true;
        if (k == 1) {
            out.exact = true;
            out.dim = lw == 1 ? 0 : 1;
            out.tag = "isotropic-primitive";
        } else {
            out.exact = false;
            out.dim = lw == 1 ? floor_div(k, 2) : k;
            out.tag = "isotropic-multiple-bound";
        }
        return out;
    }
    // negative square: only multiples of the rigid case witness carry
    // semistable sheaves
    SlopeClass sc = slope_decompose(block);
    CaseClassification cls = classify_case(sc.r0, sc.xi0, cfg);
    if (cls.witness) {
        Int m = sc.l;
        if (*cls.witness * m == block) {
            out.realizable = true;
            out.exact = true;
            if (cls.kind == CaseKind::B) {
                // points F^a + F(K_X)^b, a+b=m, F(K_X) != F; stack dim is
                // -min(a^2+b^2)
                Int a = m / 2, b = m - m / 2;
                out.dim = -(a * a + b * b);
            } else {
                // case C: F(K_X) = F, single point with GL(m) stabilizer
                out.dim = -(m * m);
            }
            out.tag = "rigid-multiple";
            return out;
        }
    }
    out.realizable = false;
    out.tag = "negative-square-unrealizable";
    return out;
}

StratumDim hn_stratum_dim(const StratumType& type, const MukaiVector& total,
                          const SurfaceConfig& cfg, const Int& ext2_override) {
    if (type.blocks.empty()) throw std::domain_error("hn_stratum_dim: empty block list");
    StratumDim out;
    out.realizable = true;
    out.exact = true;
    Int dim = 0;
    const size_t s = type.blocks.size();
    for (size_t i = 0; i < s; ++i) {
        BlockDim bd = block_dim(type.block_vector(i), cfg);
        if (!bd.realizable) {
            out.realizable = false;
            return out;
        }
        if (!bd.exact) out.exact = false;
        dim += bd.dim;
    }
    Int worst_ext2 = 0;
    for (size_t i = 0; i < s; ++i) {
        for (size_t j = i + 1; j < s; ++j) {
            dim += mukai_pair(type.block_vector(j), type.block_vector(i));
            worst_ext2 += floor_div(type.blocks[j].l, type.blocks[i].l);
        }
    }
    if (ext2_override >= 0) {
        dim += ext2_override;
        worst_ext2 = ext2_override;
    }
    out.dim = dim;
    out.codim = mukai_square(total) - dim;
    out.codim_worst_ext2 = ext2_override >= 0 ? out.codim
                                              : out.codim - worst_ext2;
    return out;
}

namespace {

void enumerate_blocks(const SlopeClass& sc, const Int& height, bool strict,
                      const std::optional<Rat>& head_cap, const Int& l_left, const Int& s2_left,
                      std::vector<SlopeBlock>& cur, std::vector<StratumType>& out,
                      const StratumKind kind) {
    if (l_left == 0) {
        if (s2_left == 0 && cur.size() >= 2) {
            StratumType t;
            t.kind = kind;
            t.base = sc;
            t.blocks = cur;
            out.push_back(std::move(t));
        }
        return;
    }
    // remaining factors each carry |s2| <= height
    if (boost::multiprecision::abs(s2_left) > l_left * height) return;
    for (Int l = 1; l <= l_left; ++l) {
        for (Int s2 = height; s2 >= -height; --s2) {
            if (((l * sc.r0 - s2) & 1) != 0) continue; // lattice parity
            if (!cur.empty()) {
                const SlopeBlock& prev = cur.back();
                // descending ratio chain: s2_prev / l_prev (>|>=) s2 / l
                Int lhs = prev.s2 * l, rhs = s2 * prev.l;
                if (strict ? lhs <= rhs : lhs < rhs) continue;
            } else if (head_cap) {
                // a0/l0 >= a1/l1
                Rat ratio(s2, l);
                if (ratio > *head_cap) continue;
            }
            cur.push_back({l, s2});
            enumerate_blocks(sc, height, strict, head_cap, l_left - l, s2_left - s2, cur, out, kind);
            cur.pop_back();
        }
    }
}

} // namespace

std::vector<StratumType> enumerate_hn_types(const MukaiVector& v, const Int& height_bound,
                                            StratumKind kind) {
    if (height_bound < 0) throw std::domain_error("enumerate_hn_types: negative height bound");
    if (kind == StratumKind::fiber_quotient)
        throw std::domain_error("enumerate_hn_types: fiber blocks come from flat_boundary_blocks");
    SlopeClass sc = slope_decompose(v);
    std::optional<Rat> head_cap;
    if (kind == StratumKind::HN_slope) {
        MukaiVector w = isotropic_companion(sc.r0, sc.xi0);
        SlopeClass wsc = slope_decompose(w);
        head_cap = Rat(w.s, wsc.l);
    }
    std::vector<StratumType> out;
    std::vector<SlopeBlock> cur;
    const bool strict = kind == StratumKind::HN_slope;
    enumerate_blocks(sc, height_bound, strict, head_cap, sc.l, v.s, cur, out, kind);
    return out;
}

MinCodimReport verify_min_codim(const MukaiVector& v, const Int& height_bound,
                                const SurfaceConfig& cfg) {
    if (mukai_square(v) <= 0)
        throw std::domain_error("verify_min_codim: requires <v^2> > 0");
    MinCodimReport rep;
    {
        Int k = lattice_divisibility(v);
        if (is_even(k)) {
            MukaiVector half(exact_div(v.r, 2), v.xi.divided_by(2), exact_div(v.s, 2));
            rep.exceptional_shape = mukai_square(half) == 1;
        }
    }
    auto types = enumerate_hn_types(v, height_bound, StratumKind::HN_surface);
    std::optional<Int> min_all, min_equal;
    for (const auto& t : types) {
        ++rep.types_total;
        StratumDim sd = hn_stratum_dim(t, v, cfg);
        if (!sd.realizable) continue;
        ++rep.types_realizable;
        if (!min_all || sd.codim < *min_all) min_all = sd.codim;
        bool equal_ratio = true;
        for (size_t i = 0; i + 1 < t.blocks.size() && equal_ratio; ++i)
            if (t.blocks[i].s2 * t.blocks[i + 1].l != t.blocks[i + 1].s2 * t.blocks[i].l)
                equal_ratio = false;
        if (equal_ratio && (!min_equal || sd.codim < *min_equal)) min_equal = sd.codim;
    }
    rep.min_codim = min_all;
    if (min_all) {
        for (const auto& t : types) {
            StratumDim sd = hn_stratum_dim(t, v, cfg);
            if (sd.realizable && sd.exact && sd.codim == *min_all) rep.achieving.push_back(t);
        }
    }
    // The two proven floors: every stratum has codim >= 1; the equal-ratio
    // (properly-semistable) strata have codim >= 2 away from the 2v0 shape.
    if (min_all && *min_all < 1)
        throw std::logic_error("verify_min_codim: stratum of codim < 1 found for v = " + to_text(v));
    if (min_equal && *min_equal < 2 && !rep.exceptional_shape)
        throw std::logic_error("verify_min_codim: properly-semistable dichotomy violated for v = " +
                               to_text(v));
    return rep;
}

Int elliptic_codim(const Int& r, const Int& d, const std::vector<FiberBlock>& blocks) {
    if (r < 1 || gcd(r, d) != 1) throw std::domain_error("elliptic_codim: need r >= 1, gcd(r,d) = 1");
    Int total = 0;
    for (const auto& b : blocks) {
        if (b.l < 1) throw std::domain_error("elliptic_codim: block multiplicity must be positive");
        if (gcd(b.r, b.d) != 1)
            throw std::domain_error("elliptic_codim: block needs gcd(r_i, d_i) = 1");
        if (b.r <= 0 || b.r > r) throw std::domain_error("elliptic_codim: block needs 0 < r_i <= r");
        Int c = b.r * d - r * b.d;
        if (c <= 0)
            throw std::domain_error("elliptic_codim: block violates r_i d - r d_i > 0");
        total += b.l * (c - 1);
    }
    return total;
}

std::vector<FlatBlock> flat_boundary_blocks(const Int& r, const Int& d, const Int& family_l,
                                            const Int& max_contribution) {
    if (r < 2 || !is_even(r)) throw std::domain_error("flat_boundary_blocks: r must be even, >= 2");
    if (gcd(r, d) != 1) throw std::domain_error("flat_boundary_blocks: gcd(r,d) must be 1");
    if (family_l < 1) throw std::domain_error("flat_boundary_blocks: family_l must be positive");
    const Int lhalf = floor_div(family_l, 2);
    std::vector<FlatBlock> out;
    for (Int k = 1;; ++k) {
        // cheapest possible contribution at this k: ell=1 with c=1, or ell=2
        // with c=2 (c is even when x is); both are increasing in k
        Int best = std::min(family_l * k - floor_div(k, 2) - lhalf,
                            2 * family_l * k - k - lhalf);
        if (best > max_contribution) break;
        for (Int c = 1;; ++c) {
            // dim M <= k, so the contribution is at least family_l*k*c - k - lhalf
            if (family_l * k * c - k - lhalf > max_contribution) break;
            // solve x d - r y = c over 0 < x <= 2 family_l r
            for (Int x = 1; x <= 2 * family_l * r; ++x) {
                Int num = x * d - c;
                if (num % r != 0) continue;
                Int y = num / r;
                if (gcd(x, y) != 1) continue;
                bool even_x = is_even(x);
                Int dimM = even_x ? k : floor_div(k, 2);
                Int contribution = family_l * k * c - dimM - lhalf;
                if (contribution > max_contribution) continue;
                FlatBlock fb;
                fb.k = k;
                fb.x = x;
                fb.y = y;
                fb.ell = even_x ? 2 : 1;
                fb.contribution = contribution;
                if (x <= family_l * r) {
                    fb.supports.push_back("Pi1");
                    fb.supports.push_back("Pi2");
                }
                if (is_even(k * x) && k * x <= 2 * family_l * r) fb.supports.push_back("f");
                if (fb.supports.empty()) continue;
                out.push_back(std::move(fb));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const FlatBlock& a, const FlatBlock& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

std::vector<BoundaryDivisor> boundary_divisors(const Int& r, const Int& d, const Int& family_l) {
    if (family_l != 1 && family_l != 2)
        throw std::domain_error("boundary_divisors: classified only for family_l in {1, 2}");
    BezoutPair pq = find_pq(r, d);
    // u1 = (0, p e1, q); u2 = (0, (2p +- r) e1, 2q +- d) chosen inside (0, 2r]
    MukaiVector u1(0, e1() * pq.p, 2 * pq.q);
    Int x2 = 2 * pq.p, y2 = 2 * pq.q;
    if (2 * pq.p <= r) {
        x2 += r;
        y2 += d;
    } else {
        x2 -= r;
        y2 -= d;
    }
    MukaiVector u2(0, e1() * x2, 2 * y2);
    auto pairing = [&](const Int& x, const Int& y) { return family_l * (x * d - r * y); };
    std::vector<BoundaryDivisor> out;
    out.push_back({"D1", u1, "Pi1", pairing(pq.p, pq.q)});
    out.push_back({"D2", u1, "Pi2", pairing(pq.p, pq.q)});
    if (family_l == 1) {
        out.push_back({"D3", u1 * 2, "f", pairing(2 * pq.p, 2 * pq.q)});
        out.push_back({"D4", u2, "f", pairing(x2, y2)});
    }
    return out;
}

SupportBounds support_locus_bounds(const Int& L2) {
    if (L2 <= 0 || !is_even(L2))
        throw std::domain_error("support_locus_bounds: (L^2) must be positive and even");
    SupportBounds sb;
    sb.dim_total = 4 * L2;
    sb.dim_m1_bound = exact_div(7 * L2, 2) - 1;
    sb.dim_m2_bound = 4 * L2 - 2;
    sb.sacca_codim_ok = (sb.dim_total - sb.dim_m1_bound >= 2) && (sb.dim_total - sb.dim_m2_bound >= 2);
    return sb;
}

} // namespace enr
