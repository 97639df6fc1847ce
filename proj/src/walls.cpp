#include "enr/walls.hpp"

#include "enr/enumerate.hpp"

#include <algorithm>
#include <map>

namespace enr {

namespace {

Int rat_floor(const Rat& x) {
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

// -2 rF (r - rF) Delta(v), scaled
Int wall_bound(const MukaiVector& v, const Int& rF, const Rat& scale) {
    Int delta = discriminant(v);
    return rat_floor(Rat(2 * rF * (v.r - rF) * delta) * scale);
}

NSClass sign_normalize(NSClass x) {
    for (int i = 0; i < kRank; ++i) {
        if (x.c[i] == 0) continue;
        if (x.c[i] < 0) return -x;
        break;
    }
    return x;
}

bool congruent_mod(const NSClass& eta, const NSClass& target, const Int& r) {
    for (int i = 0; i < kRank; ++i)
        if ((eta.c[i] - target.c[i]) % r != 0) return false;
    return true;
}

bool lex_less_ns(const NSClass& a, const NSClass& b) {
    for (int i = 0; i < kRank; ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// Weyl-type vector of the E8(-1) block: (w, alpha_i) = -1 for every simple
// root, hence nonzero pairing with every root.  Integral because E8 is
// unimodular.
const NSClass& weyl_e8() {
    static const NSClass w = [] {
        std::vector<std::vector<Int>> M(8, std::vector<Int>(8));
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) M[i][j] = gram().entry(2 + i, 2 + j);
        std::vector<Int> t(8, -1);
        std::vector<Int> x0;
        std::vector<std::vector<Int>> ker;
        if (!solve_integer_affine(M, t, x0, ker) || !ker.empty())
            throw std::logic_error("weyl_e8: solving the simple-root system failed");
        NSClass v;
        for (int i = 0; i < 8; ++i) v.c[2 + i] = x0[i];
        return v;
    }();
    return w;
}

} // namespace

std::vector<WallClass> candidate_walls(const MukaiVector& v, const WallSearchParams& params) {
    if (v.r < 2) throw std::domain_error("candidate_walls: rank < 2 has no walls");
    Int delta = discriminant(v);
    if (delta < 0) throw std::domain_error("candidate_walls: Delta(v) < 0");
    std::map<std::pair<Int, std::array<Int, kRank>>, WallClass> dedup;
    for (Int rF = 1; rF < v.r; ++rF) {
        Int bound = wall_bound(v, rF, params.bound_scale);
        if (bound <= 0) continue;
        NormRangeQuery q;
        q.lo = -bound;
        q.hi = -1;
        q.hyperbolic_bound = params.height;
        NSClass target = v.xi * rF;
        target.kx = 0;
        for (const auto& eta : enumerate_norm_range(q)) {
            if (!congruent_mod(eta, target, v.r)) continue;
            NSClass norm_eta = sign_normalize(eta);
            auto key = std::make_pair(rF, norm_eta.c);
            if (dedup.count(key)) continue;
            Int mult = norm_eta.content();
            WallClass wc;
            wc.eta = norm_eta.divided_by(mult);
            wc.multiplicity = mult;
            wc.rF = rF;
            wc.norm = norm_ns(eta);
            dedup.emplace(key, std::move(wc));
        }
    }
    std::vector<WallClass> out;
    for (auto& [key, wc] : dedup) out.push_back(std::move(wc));
    std::sort(out.begin(), out.end(), [](const WallClass& a, const WallClass& b) {
        if (a.rF != b.rF) return a.rF < b.rF;
        NSClass ra = a.eta * a.multiplicity, rb = b.eta * b.multiplicity;
        return lex_less_ns(ra, rb);
    });
    return out;
}

bool is_general(const PolarizationClass& H, const MukaiVector& v, const Rat& bound_scale) {
    if (v.r < 2) return true; // rank 1 has no walls
    for (Int rF = 1; rF < v.r; ++rF) {
        Int bound = wall_bound(v, rF, bound_scale);
        if (bound <= 0) continue;
        NormRangeQuery q;
        q.lo = -bound;
        q.hi = -1;
        q.constraints.push_back({H.h, 0});
        NSClass target = v.xi * rF;
        target.kx = 0;
        bool hit = false;
        enumerate_norm_range_visit(q, [&](const NSClass& eta) {
            if (congruent_mod(eta, target, v.r)) {
                hit = true;
                return false;
            }
            return true;
        });
        if (hit) return false;
    }
    return true;
}

PolarizationClass chamber_representative(const MukaiVector& v, const Rat& bound_scale,
                                         long long max_height) {
    const NSClass cone = e1() + e2();
    // Stage 1: complete lexicographic sweep of the height-1 coefficient box,
    // so rank-1 and most odd-c1 vectors end at e1 + e2.
    {
        std::vector<int> coeff(kRank, -1);
        while (true) {
            NSClass cand;
            for (int i = 0; i < kRank; ++i) cand.c[i] = coeff[i];
            if (norm_ns(cand) > 0 && pair_ns(cand, cone) > 0) {
                PolarizationClass H(cand);
                if (is_general(H, v, bound_scale)) return H;
            }
            int pos = kRank - 1;
            while (pos >= 0 && coeff[pos] == 1) {
                coeff[pos] = -1;
                --pos;
            }
            if (pos < 0) break;
            ++coeff[pos];
        }
    }
    // Stage 2: H = a e1 + b e2 + w with w a (perturbed multiple of the) E8
    // Weyl vector and b one more than the Cauchy-Schwarz pairing bound
    // sqrt(|window| * |w^2|), a = 2b + 1.  No wall with a nonzero U component
    // can then pair to zero against H, and the E8-pure walls die once w pairs
    // nonzero with every short E8 class; the exact is_general test decides.
    Int max_norm = 1;
    for (Int rF = 1; rF < v.r; ++rF) max_norm = std::max(max_norm, wall_bound(v, rF, bound_scale));
    // deterministic perturbation list: 0, then +-roots, then +-(root sums)
    std::vector<NSClass> perturbations;
    perturbations.push_back(ns_zero());
    for (int i = 0; i < 8; ++i) {
        perturbations.push_back(e8_root(i));
        perturbations.push_back(-e8_root(i));
    }
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            perturbations.push_back(e8_root(i) + e8_root(j));
            perturbations.push_back(-(e8_root(i) + e8_root(j)));
            perturbations.push_back(e8_root(i) - e8_root(j));
            perturbations.push_back(e8_root(j) - e8_root(i));
        }
    for (long long s = 1; s <= max_height; ++s) {
        for (const NSClass& d : perturbations) {
            NSClass w = weyl_e8() * Int(s) + d;
            Int nw = -norm_ns(w);
            if (nw <= 0) continue;
            Int b = isqrt(max_norm * nw) + 1;
            Int a = 2 * b + 1;
            NSClass cand = e1() * a + e2() * b + w;
            Int content = cand.content();
            if (content > 1) cand = cand.divided_by(content);
            if (norm_ns(cand) <= 0 || pair_ns(cand, cone) <= 0) continue;
            PolarizationClass H(cand);
            if (is_general(H, v, bound_scale)) return H;
        }
    }
    throw std::runtime_error(
        "chamber_representative: no general polarization found within the configured "
        "search schedule (max scale " +
        std::to_string(max_height) + "); raise the height limit");
}

} // namespace enr
