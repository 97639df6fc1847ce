#include "enr/existence.hpp"

#include <algorithm>

namespace enr {

bool SurfaceConfig::nodal_minus2_exists(const Int& r0, const NSClass& xi0) const {
    if (unnodal) return false;
    if (nodal_all) return true;
    for (const auto& [r, xi] : nodal_witnesses)
        if (r == r0 && xi.c == xi0.c) return true;
    return false;
}

CaseClassification classify_case(const Int& r0, const NSClass& xi0, const SurfaceConfig& cfg) {
    if (r0 <= 0) throw std::domain_error("classify_case: r0 must be positive");
    {
        Int g = gcd(r0, xi0.content());
        if (g == 0) g = r0;
        if (g != 1) throw std::domain_error("classify_case: gcd(r0, xi0) must be 1");
    }
    Int xi2 = norm_ns(xi0);
    CaseClassification out;
    if (!is_even(r0) && (xi2 + 1) % r0 == 0) {
        // a0 = ((xi^2)+1)/(2 r0) in Z + 1/2; s0 odd automatically
        if (cfg.grant_case_b) {
            Int s0 = exact_div(xi2 + 1, r0);
            out.kind = CaseKind::B;
            out.witness = MukaiVector(r0, xi0, s0);
            out.threshold_unit = 1;
            if (mukai_square(*out.witness) != -1)
                throw std::logic_error("classify_case: case-B witness square is not -1");
            return out;
        }
        out.notes.push_back("caseB-arithmetic-holds-existence-not-granted-strict-mode");
    }
    if (is_even(r0) && (xi2 / 2 + 1) % r0 == 0) {
        if (cfg.nodal_minus2_exists(r0, xi0)) {
            Int s0 = exact_div(xi2 + 2, r0);
            out.kind = CaseKind::C;
            out.witness = MukaiVector(r0, xi0, s0);
            out.threshold_unit = 2;
            if (mukai_square(*out.witness) != -2)
                throw std::logic_error("classify_case: case-C witness square is not -2");
            return out;
        }
        out.notes.push_back("caseC-arithmetic-holds-no-nodal-witness");
    }
    out.kind = CaseKind::A;
    out.threshold_unit = 0;
    return out;
}

bool l_matches_half_rank_canonical(const NSClass& L, const Int& r) {
    if (!is_even(r)) return false;
    for (int i = 0; i < kRank; ++i)
        if (!is_even(L.c[i])) return false;
    Int half = r / 2;
    return (L.kx & 1) == static_cast<int>(half & 1);
}

namespace {

bool l_twice_divisor(const NSClass& L) {
    // L = 2 D with D in NS(X): coordinates even, kx = 0 (2 K_X = 0)
    for (int i = 0; i < kRank; ++i)
        if (!is_even(L.c[i])) return false;
    return L.kx == 0;
}

void note(std::vector<std::string>* notes, const char* tag) {
    if (notes) notes->push_back(tag);
}

} // namespace

DimValue moduli_dim(const MukaiVector& v, const NSClass& L, const SurfaceConfig& cfg,
                    std::vector<std::string>* notes) {
    if (v.r <= 0) throw std::domain_error("moduli_dim: rank must be positive");
    Int sq = mukai_square(v);
    if (sq > 0) return DimValue::exact(sq);
    if (sq < 0) {
        SlopeClass sc = slope_decompose(v);
        CaseClassification cls = classify_case(sc.r0, sc.xi0, cfg);
        if (cls.witness && *cls.witness == v) {
            note(notes, "dim-rigid-witness");
            return DimValue::rigid();
        }
        throw std::domain_error("moduli_dim: <v^2> < 0 and v is not the rigid witness");
    }
    // isotropic: v = k w with w primitive isotropic
    Int k = lattice_divisibility(v);
    MukaiVector w(exact_div(v.r, k), v.xi.divided_by(k), exact_div(v.s, k));
    Int lw = ell(w);
    if (k == 1) {
        if (lw == 1) return DimValue::exact(0);
        note(notes, "dim-isotropic-ell2-assumes-stable-nonempty");
        return DimValue::exact(1);
    }
    if (k == 2) {
        if (lw == 1 && l_twice_divisor(L)) {
            note(notes, "dim-isotropic-2w-stable-nonempty");
            return DimValue::exact(1);
        }
        note(notes, lw == 1 ? "dim-isotropic-2w-stable-empty-bound"
                            : "dim-isotropic-2w-ell2-bound");
        return DimValue::upper(lw == 1 ? 1 : 2);
    }
    note(notes, "dim-isotropic-multiple-bound");
    return DimValue::upper(lw == 1 ? floor_div(k, 2) : k);
}

ExistenceReport analyze(const MukaiVector& v, const NSClass& L, const SurfaceConfig& cfg) {
    if (v.r <= 0) throw std::domain_error("analyze: rank must be positive");
    if (L.c != v.xi.c)
        throw std::domain_error("analyze: [L mod K_X] must equal xi(v)");
    Int sq = mukai_square(v);
    if (sq < 0) throw std::domain_error("analyze: <v^2> must be nonnegative");

    ExistenceReport rep;
    rep.v = v;
    rep.L = L;
    rep.slope = slope_decompose(v);
    rep.classification = classify_case(rep.slope.r0, rep.slope.xi0, cfg);
    for (const auto& n : rep.classification.notes) rep.notes.push_back(n);
    rep.threshold = rep.classification.threshold(rep.slope.l);

    const Int lr = rep.slope.l * rep.slope.r0;
    rep.mu_stable_exists = sq >= rep.threshold;
    switch (rep.classification.kind) {
        case CaseKind::A: rep.notes.push_back("Thm-existence-caseA-threshold0"); break;
        case CaseKind::B: rep.notes.push_back("Thm-existence-caseB-threshold-l2"); break;
        case CaseKind::C: rep.notes.push_back("Thm-existence-caseC-threshold-2l2"); break;
    }

    // locally free members need lr > 1; rank-1 moduli are ideal-sheaf twists
    rep.mu_stable_locally_free_exists = rep.mu_stable_exists && lr > 1;
    if (rep.mu_stable_exists && lr == 1)
        rep.notes.push_back("rank1-positive-square-never-locally-free");

    // boundary anomaly (2,0,-1)e^D: l = 2 over an odd-rank slope class with
    // <v^2> = l^2 and L in the K_X component
    bool two_v0_sq1_shape = false;
    {
        Int k = lattice_divisibility(v);
        if (k % 2 == 0) {
            MukaiVector half(exact_div(v.r, 2), v.xi.divided_by(2), exact_div(v.s, 2));
            two_v0_sq1_shape = mukai_square(half) == 1;
        }
    }
    bool l_canonical = l_matches_half_rank_canonical(L, v.r);
    if (two_v0_sq1_shape && l_canonical) {
        rep.notes.push_back("caseB-2v0-boundary-two-components-lf-in-one");
    }

    rep.stack_dim = moduli_dim(v, L, cfg, &rep.notes);

    // structure flags
    const bool primitive = is_primitive(v);
    if (sq > 0) {
        rep.reduced = true;
        rep.notes.push_back("Cor-reduced-dim-eq-square");
        bool normal_exception = (two_v0_sq1_shape && l_canonical) || sq == 2;
        rep.normal = !normal_exception;
        if (normal_exception)
            rep.notes.push_back(sq == 2 ? "Cor-normal-exception-square2"
                                        : "Cor-normal-exception-2v0");
        if (primitive) {
            rep.connected = true;
            rep.notes.push_back("Thm-connected-primitive");
            if (!is_even(v.r)) {
                rep.irreducible = true;
                rep.notes.push_back("irreducible-odd-rank-primitive");
            } else if (cfg.unnodal || sq >= 4) {
                rep.irreducible = true;
                rep.notes.push_back("Thm-irreducible-primitive");
            }
        } else {
            Int k = lattice_divisibility(v);
            MukaiVector base(exact_div(v.r, k), v.xi.divided_by(k), exact_div(v.s, k));
            if (two_v0_sq1_shape && l_canonical) {
                rep.irreducible = false;
                rep.notes.push_back("Rem-reducible-2v0-KX-component");
            } else if (k == 2 && is_even(base.r) && ell(base) == 1) {
                rep.irreducible = true;
                rep.notes.push_back("Rem-irreducible-2x-even-rank-ell1");
            } else if ((k & (k - 1)) == 0 && is_even(base.r) && !l_twice_divisor(L)) {
                rep.irreducible = true;
                rep.notes.push_back("Rem-irreducible-2m-L-not-divisible");
            }
            if (rep.irreducible == true) rep.connected = true;
        }
    } else { // sq == 0
        Int k = lattice_divisibility(v);
        if (k == 1) {
            rep.reduced = true;
            rep.normal = true;
            rep.connected = true;
            rep.notes.push_back("Lem-isotropic-primitive-structure");
        } else {
            // only the stable locus is described for multiples; the flags carry
            // no assertion here
            rep.reduced = false;
            rep.normal = false;
            rep.notes.push_back("structure-not-asserted-nonprimitive-isotropic");
        }
    }
    return rep;
}

} // namespace enr
