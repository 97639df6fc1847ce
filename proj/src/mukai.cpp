#include "enr/mukai.hpp"

#include <sstream>

namespace enr {

MukaiVector::MukaiVector(Int rank, NSClass chern, Int s_twice)
    : r(std::move(rank)), xi(std::move(chern)), s(std::move(s_twice)) {
    if (((r - s) & 1) != 0)
        throw std::domain_error("MukaiVector: parity violated, need r == s (mod 2), got r=" +
                                r.str() + ", s=" + s.str());
}

MukaiVector MukaiVector::operator+(const MukaiVector& o) const {
    return MukaiVector(r + o.r, xi + o.xi, s + o.s);
}

MukaiVector MukaiVector::operator-(const MukaiVector& o) const {
    return MukaiVector(r - o.r, xi - o.xi, s - o.s);
}

MukaiVector MukaiVector::operator-() const { return MukaiVector(-r, -xi, -s); }

MukaiVector MukaiVector::operator*(const Int& k) const {
    return MukaiVector(r * k, xi * k, s * k);
}

MukaiVector point_class() { return MukaiVector(0, ns_zero(), 2); }

MukaiVector structure_sheaf_class() { return MukaiVector(1, ns_zero(), 1); }

Int mukai_pair(const MukaiVector& v, const MukaiVector& w) {
    return pair_ns(v.xi, w.xi) - exact_div(v.r * w.s + w.r * v.s, 2);
}

Int mukai_square(const MukaiVector& v) { return pair_ns(v.xi, v.xi) - v.r * v.s; }

Int ell(const MukaiVector& v) {
    Int g = gcd(gcd(v.r, v.xi.content()), v.s);
    return g < 0 ? -g : g;
}

Int lattice_divisibility(const MukaiVector& v) {
    Int g = ell(v);
    if (g == 0) return 0; // the zero vector
    for (Int k = g; k >= 1; --k) {
        if (g % k != 0) continue;
        Int rk = v.r / k, sk = v.s / k;
        if (((rk - sk) & 1) == 0) return k;
    }
    return 1;
}

bool is_primitive(const MukaiVector& v) { return lattice_divisibility(v) == 1; }

SlopeClass slope_decompose(const MukaiVector& v) {
    if (v.r <= 0) throw std::domain_error("slope_decompose: rank must be positive");
    Int l = gcd(v.r, v.xi.content());
    if (l == 0) l = v.r; // xi = 0
    SlopeClass sc;
    sc.l = l;
    sc.r0 = exact_div(v.r, l);
    sc.xi0 = v.xi.divided_by(l);
    sc.xi0.kx = 0;
    return sc;
}

Int discriminant(const MukaiVector& v) {
    if (v.r <= 0) throw std::domain_error("discriminant: rank must be positive");
    return mukai_square(v) + v.r * v.r;
}

ChernData chern_from_mukai(const MukaiVector& v) {
    if (v.r <= 0) throw std::domain_error("chern_from_mukai: rank must be positive");
    // v = ch . sqrt(td) with sqrt(td) = (1, 0, 1/2):
    // a = ch2 + r/2, ch2 = (c1^2)/2 - c2  =>  c2 = ((c1^2) + r - s)/2
    ChernData cd;
    cd.r = v.r;
    cd.c1 = v.xi;
    cd.c2 = exact_div(norm_ns(v.xi) + v.r - v.s, 2);
    return cd;
}

MukaiVector isotropic_companion(const Int& r0, const NSClass& xi0) {
    if (r0 <= 0) throw std::domain_error("isotropic_companion: r0 must be positive");
    Int g = gcd(r0, xi0.content());
    if (g == 0) g = r0;
    if (g != 1) throw std::domain_error("isotropic_companion: gcd(r0, xi0) must be 1");
    Int xi2 = norm_ns(xi0);
    for (Int l0 = 1; l0 <= 2 * r0; ++l0) {
        // s0 = 2 a0 = l0 (xi0^2) / r0 must be integral with l0 r0 == s0 (mod 2)
        if ((l0 * xi2) % r0 != 0) continue;
        Int s0 = (l0 * xi2) / r0;
        if (((l0 * r0 - s0) & 1) != 0) continue;
        MukaiVector w(l0 * r0, xi0 * l0, s0);
        if (mukai_square(w) != 0 || !is_primitive(w))
            throw std::logic_error("isotropic_companion: constructed vector fails invariants");
        return w;
    }
    throw std::logic_error("isotropic_companion: no l0 <= 2 r0, input out of theory");
}

bool divisibility_check(const MukaiVector& u, const MukaiVector& w) {
    SlopeClass sc = slope_decompose(u);
    MukaiVector expect = isotropic_companion(sc.r0, sc.xi0);
    if (!(expect == w))
        throw std::domain_error("divisibility_check: w is not the companion of u's slope class");
    return mukai_pair(u, w) % sc.r0 == 0;
}

MukaiVector twist(const MukaiVector& v, const NSClass& D) {
    Int d2 = norm_ns(D);
    return MukaiVector(v.r, v.xi + D * v.r, v.s + 2 * pair_ns(v.xi, D) + v.r * d2);
}

MukaiVector EllipticDecomposition::recompose() const {
    MukaiVector lu = base_u * l;
    NSClass xi = lu.xi + e1() * n + delta;
    return MukaiVector(lu.r, xi, lu.s + s);
}

EllipticDecomposition elliptic_decompose(const MukaiVector& v, const Int& r0, const Int& d) {
    if (r0 <= 0 || !is_even(r0)) throw std::domain_error("elliptic_decompose: r0 must be positive and even");
    if (gcd(r0, d) != 1) throw std::domain_error("elliptic_decompose: gcd(r0, d) must be 1");
    if (v.r % r0 != 0) throw std::domain_error("elliptic_decompose: r0 does not divide rk v");
    Int l = v.r / r0;
    // membership in (0, r0 e1, d)^perp: r0 (xi, e1) = r d, i.e. (xi, e1) = l d
    if (pair_ns(v.xi, e1()) != l * d)
        throw std::domain_error("elliptic_decompose: v is not orthogonal to (0, r0 e1, d)");
    EllipticDecomposition dec;
    dec.base_u = MukaiVector(r0, e2() * d, 0);
    dec.l = l;
    dec.n = pair_ns(v.xi, e2());
    dec.delta = v.xi - e2() * (l * d) - e1() * dec.n;
    dec.s = v.s;
    if (pair_ns(dec.delta, e1()) != 0 || pair_ns(dec.delta, e2()) != 0)
        throw std::logic_error("elliptic_decompose: delta not in U-perp");
    if (!(dec.recompose() == v)) throw std::logic_error("elliptic_decompose: recomposition failed");
    return dec;
}

std::pair<Rat, Rat> elliptic_pairing_identity(const EllipticDecomposition& v1,
                                              const EllipticDecomposition& v2) {
    if (v1.l <= 0 || v2.l <= 0)
        throw std::domain_error("elliptic_pairing_identity: l must be positive");
    if (!(v1.base_u == v2.base_u))
        throw std::domain_error("elliptic_pairing_identity: different base vectors u");
    MukaiVector a = v1.recompose(), b = v2.recompose();
    Rat lhs(mukai_pair(a, b));
    NSClass dd = v1.delta * v2.l - v2.delta * v1.l;
    Rat rhs = Rat(v2.l, 2 * v1.l) * Rat(mukai_square(a)) +
              Rat(v1.l, 2 * v2.l) * Rat(mukai_square(b)) -
              Rat(1, 2 * v1.l * v2.l) * Rat(norm_ns(dd));
    return {lhs, rhs};
}

std::string to_text(const MukaiVector& v) {
    std::ostringstream os;
    os << '(' << v.r << "; " << to_text(v.xi) << "; " << v.s << ')';
    return os.str();
}

MukaiVector parse_mukai(const std::string& text) {
    size_t p = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("parse error at offset " + std::to_string(p) + ": " + what +
                                    " in \"" + text + "\"");
    };
    auto ws = [&] {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    };
    auto expect = [&](char c) {
        ws();
        if (p >= text.size() || text[p] != c) fail(std::string("expected '") + c + "'");
        ++p;
    };
    auto integer = [&]() {
        ws();
        size_t start = p;
        if (p < text.size() && (text[p] == '-' || text[p] == '+')) ++p;
        size_t digits = p;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
        if (p == digits) {
            p = start;
            fail("expected integer");
        }
        return Int(text.substr(start, p - start));
    };
    expect('(');
    Int r = integer();
    expect(';');
    ws();
    NSClass xi = parse_ns_at(text, p);
    expect(';');
    Int s = integer();
    expect(')');
    ws();
    if (p != text.size()) fail("trailing characters");
    try {
        return MukaiVector(std::move(r), std::move(xi), std::move(s));
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(std::string(e.what()) + " in \"" + text + "\"");
    }
}

} // namespace enr
