#include "enr/transforms.hpp"

namespace enr {

ReflectionSpec::ReflectionSpec(MukaiVector witness, ReflectionKind k)
    : v0(std::move(witness)), kind(k) {
    Int sq = mukai_square(v0);
    if (kind == ReflectionKind::minus1 && sq != -1)
        throw std::domain_error("ReflectionSpec: minus1 witness must have square -1, got " + sq.str());
    if (kind == ReflectionKind::minus2 && sq != -2)
        throw std::domain_error("ReflectionSpec: minus2 witness must have square -2, got " + sq.str());
}

MukaiVector reflect(const ReflectionSpec& spec, const MukaiVector& v) {
    Int c = spec.kind == ReflectionKind::minus1 ? 2 : 1;
    MukaiVector w0 = spec.v0.dual();
    MukaiVector dv = v.dual();
    return dv + w0 * (c * mukai_pair(dv, w0));
}

ReflectionSpec dual_spec(const ReflectionSpec& spec) {
    return ReflectionSpec(spec.v0.dual(), spec.kind);
}

PsiImage psi_image(const MukaiVector& v) {
    PsiImage im;
    Int de1 = pair_ns(v.xi, e1());
    im.rank_after = v.r - 2 * de1;
    im.deg_e1_after = -de1;
    im.chi_after = v.chi();
    im.note = "images are classes of Psi(E)[shift] normalized so that Psi(O)=O and "
              "Psi(0,0,1)=(0,2e1,1); the paper leaves the overall sign of the e1-degree "
              "implicit";
    bool in_span = v.xi.kx == 0;
    for (int i = 1; i < kRank; ++i)
        if (v.xi.c[i] != 0) in_span = false;
    if (in_span) {
        // v = alpha (1,0,1/2) + beta (0,e1,0) + gamma (0,0,1)
        Int alpha = v.r;
        Int beta = v.xi.c[0];
        Int gamma = exact_div(v.s - v.r, 2);
        // Psi: (1,0,1/2) -> itself, (0,e1,0) -> (0,-e1,0), (0,0,1) -> (0,2e1,1)
        im.vector = MukaiVector(alpha, e1() * (2 * gamma - beta), v.s);
    }
    return im;
}

MukaiVector canonical_reduce(const MukaiVector& v, const NSClass& L) {
    (void)L; // the reduced vector depends only on v; L rides along mod 2
    if (!is_even(v.r) || v.r <= 0)
        throw std::domain_error("canonical_reduce: rank must be positive and even");
    if (!is_primitive(v)) throw std::domain_error("canonical_reduce: v must be primitive");
    Int sq = mukai_square(v);
    if (sq < 0) throw std::domain_error("canonical_reduce: <v^2> must be nonnegative");
    Int l = ell(v);
    MukaiVector out;
    if (l == 1) {
        NSClass zeta;
        for (int i = 0; i < kRank; ++i) zeta.c[i] = ((v.xi.c[i] % 2) + 2) % 2;
        zeta.kx = v.xi.kx;
        if (zeta.content() == 0)
            throw std::logic_error("canonical_reduce: xi is even though l(v) = 1");
        // <v'^2> = (zeta^2) - 2 s' = <v^2>
        Int sp = exact_div(norm_ns(zeta) - sq, 2);
        out = MukaiVector(2, zeta, sp);
    } else if (l == 2) {
        if (sq % 8 != 0)
            throw std::domain_error("canonical_reduce: primitive l(v)=2 requires <v^2> = 0 mod 8");
        Int n = sq / 8;
        out = MukaiVector(4, (e2() + e1() * (n + 1)) * 2, 2);
    } else {
        throw std::domain_error("canonical_reduce: l(v) must be 1 or 2 for primitive v");
    }
    if (mukai_square(out) != sq || ell(out) != l)
        throw std::logic_error("canonical_reduce: square or l(v) not preserved");
    return out;
}

BezoutPair find_pq(const Int& r, const Int& d) {
    if (r < 2) throw std::domain_error("find_pq: requires r >= 2");
    if (gcd(r, d) != 1) throw std::domain_error("find_pq: requires gcd(r,d) = 1");
    // p = d^{-1} mod r in (0, r)
    Int old_r = r, cur_r = ((d % r) + r) % r;
    Int old_t = 0, cur_t = 1;
    while (cur_r != 0) {
        Int qt = old_r / cur_r;
        Int tmp = old_r - qt * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_t - qt * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    Int p = ((old_t % r) + r) % r;
    if (p == 0) throw std::logic_error("find_pq: inverse vanished");
    Int q = exact_div(d * p - 1, r);
    BezoutPair bp;
    bp.p = p;
    bp.q = q;
    bp.direct = 2 * p <= r;
    bp.replacement = {r - p, d - q};
    return bp;
}

Int hilb_points(const Int& chi_ee, const Int& chi_O) {
    Int num = -chi_ee + chi_O;
    if (num < 0) throw std::domain_error("hilb_points: negative invariant, class not realizable");
    if (!is_even(num)) throw std::domain_error("hilb_points: odd invariant, class not realizable");
    return num / 2;
}

Int multiple_fiber_bound(const Int& l, const Int& r, const Int& m) {
    if (l < 1 || r < 1 || m < 1)
        throw std::domain_error("multiple_fiber_bound: arguments must be positive");
    return floor_div(l * gcd(r, m), m);
}

} // namespace enr
