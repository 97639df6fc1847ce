#include "enr/gram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace enr {

GramLattice::GramLattice() {
    for (auto& row : gram_) row.fill(0);
    // U block
    gram_[0][1] = gram_[1][0] = 1;
    // E8(-1), Bourbaki node order on coordinates 2..9
    static constexpr int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (int i = 0; i < 8; ++i) gram_[2 + i][2 + i] = -2;
    for (auto& e : edges) {
        gram_[1 + e[0]][1 + e[1]] = 1;
        gram_[1 + e[1]][1 + e[0]] = 1;
    }
}

Int GramLattice::determinant() const {
    // Bareiss fraction-free elimination; exact.
    std::array<std::array<Int, kRank>, kRank> m;
    for (int i = 0; i < kRank; ++i)
        for (int j = 0; j < kRank; ++j) m[i][j] = gram_[i][j];
    Int sign = 1, prev = 1;
    for (int k = 0; k < kRank - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < kRank; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < kRank; ++i)
            for (int j = k + 1; j < kRank; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return sign * m[kRank - 1][kRank - 1];
}

bool GramLattice::is_symmetric() const {
    for (int i = 0; i < kRank; ++i)
        for (int j = 0; j < kRank; ++j)
            if (gram_[i][j] != gram_[j][i]) return false;
    return true;
}

bool GramLattice::is_even() const {
    for (int i = 0; i < kRank; ++i)
        if (gram_[i][i] % 2 != 0) return false;
    return true;
}

std::pair<int, int> GramLattice::signature() const {
    // Sign pattern of the leading principal minors (all nonzero here), again by
    // Bareiss: minor_k = m[k][k] after step k.
    std::array<std::array<Int, kRank>, kRank> m;
    for (int i = 0; i < kRank; ++i)
        for (int j = 0; j < kRank; ++j) m[i][j] = gram_[i][j];
    std::vector<Int> minors;
    Int prev = 1;
    // The leading 1x1 minor of this basis is 0 (e1 is isotropic), so work in a
    // reordered basis first: swap to e1+e2 style by a unimodular change that
    // keeps the form, namely conjugate by adding row/col 1 to row/col 0.
    for (int j = 0; j < kRank; ++j) m[0][j] += m[1][j];
    for (int i = 0; i < kRank; ++i) m[i][0] += m[i][1];
    for (int k = 0; k < kRank; ++k) {
        if (k > 0) {
            for (int i = k; i < kRank; ++i)
                for (int j = k; j < kRank; ++j)
                    m[i][j] = exact_div(m[i][j] * m[k - 1][k - 1] - m[i][k - 1] * m[k - 1][j], prev);
            prev = m[k - 1][k - 1];
        }
        minors.push_back(m[k][k]);
    }
    int pos = 0, neg = 0;
    Int last = 1;
    for (const Int& mk : minors) {
        if (mk == 0) throw std::logic_error("signature: singular leading minor");
        if ((mk > 0) == (last > 0)) ++pos; else ++neg;
        last = mk;
    }
    return {pos, neg};
}

const GramLattice& gram() {
    static const GramLattice g;
    return g;
}

NSClass::NSClass(std::array<Int, kRank> coords, int torsion) : c(std::move(coords)), kx(torsion & 1) {}

bool NSClass::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Int& a) { return a == 0; }) && kx == 0;
}

NSClass NSClass::operator+(const NSClass& o) const {
    NSClass r;
    for (int i = 0; i < kRank; ++i) r.c[i] = c[i] + o.c[i];
    r.kx = (kx + o.kx) & 1;
    return r;
}

NSClass NSClass::operator-(const NSClass& o) const {
    NSClass r;
    for (int i = 0; i < kRank; ++i) r.c[i] = c[i] - o.c[i];
    r.kx = (kx + o.kx) & 1; // -K_X = K_X
    return r;
}

NSClass NSClass::operator-() const {
    NSClass r;
    for (int i = 0; i < kRank; ++i) r.c[i] = -c[i];
    r.kx = kx;
    return r;
}

NSClass NSClass::operator*(const Int& k) const {
    NSClass r;
    for (int i = 0; i < kRank; ++i) r.c[i] = c[i] * k;
    r.kx = is_even(k) ? 0 : kx;
    return r;
}

Int NSClass::content() const {
    Int g = 0;
    for (const Int& a : c) g = enr::gcd(g, a);
    return g < 0 ? -g : g;
}

bool NSClass::divisible_by(const Int& k) const {
    if (k == 0) return is_zero();
    for (const Int& a : c)
        if (a % k != 0) return false;
    return true;
}

NSClass NSClass::divided_by(const Int& k) const {
    NSClass r;
    for (int i = 0; i < kRank; ++i) r.c[i] = exact_div(c[i], k);
    r.kx = kx;
    return r;
}

NSClass ns_zero() { return NSClass{}; }

NSClass e1() {
    NSClass r;
    r.c[0] = 1;
    return r;
}

NSClass e2() {
    NSClass r;
    r.c[1] = 1;
    return r;
}

NSClass e8_root(int i) {
    if (i < 0 || i > 7) throw std::domain_error("e8_root: index out of range");
    NSClass r;
    r.c[2 + i] = 1;
    return r;
}

Int pair_ns(const NSClass& x, const NSClass& y) {
    const auto& g = gram();
    Int total = 0;
    for (int i = 0; i < kRank; ++i) {
        if (x.c[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < kRank; ++j) {
            int gij = g.entry(i, j);
            if (gij != 0 && y.c[j] != 0) row += gij * y.c[j];
        }
        total += x.c[i] * row;
    }
    return total;
}

Int norm_ns(const NSClass& x) { return pair_ns(x, x); }

std::array<int, kRank + 1> mod2_class(const NSClass& x) {
    std::array<int, kRank + 1> r{};
    for (int i = 0; i < kRank; ++i) r[i] = static_cast<int>(((x.c[i] % 2) + 2) % 2);
    r[kRank] = x.kx & 1;
    return r;
}

bool same_mod2(const NSClass& x, const NSClass& y) { return mod2_class(x) == mod2_class(y); }

PolarizationClass::PolarizationClass(NSClass v) : h(std::move(v)) {
    if (h.kx != 0) throw std::domain_error("polarization: kx bit must be 0");
    if (norm_ns(h) <= 0) throw std::domain_error("polarization: (h^2) must be positive");
    if (pair_ns(h, e1() + e2()) <= 0)
        throw std::domain_error("polarization: not in the positive cone ((h, e1+e2) <= 0)");
}

std::string to_text(const NSClass& x) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < kRank; ++i) {
        if (i) os << ',';
        os << x.c[i];
    }
    os << ']';
    if (x.kx) os << "+K";
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& what) {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos) + ": " + what +
                                " in \"" + text + "\"");
}

size_t skip_ws(const std::string& s, size_t p) {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    return p;
}

Int parse_int_at(const std::string& s, size_t& p) {
    size_t start = p;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    size_t digits = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == digits) parse_fail(s, start, "expected integer");
    return Int(s.substr(start, p - start));
}

} // namespace

NSClass parse_ns_at(const std::string& s, size_t& p) {
    p = skip_ws(s, p);
    if (p >= s.size() || s[p] != '[') parse_fail(s, p, "expected '['");
    ++p;
    NSClass r;
    for (int i = 0; i < kRank; ++i) {
        p = skip_ws(s, p);
        r.c[i] = parse_int_at(s, p);
        p = skip_ws(s, p);
        if (i + 1 < kRank) {
            if (p >= s.size() || s[p] != ',') parse_fail(s, p, "expected ','");
            ++p;
        }
    }
    if (p >= s.size() || s[p] != ']') parse_fail(s, p, "expected ']'");
    ++p;
    if (p + 1 < s.size() + 1 && p < s.size() && s[p] == '+') {
        if (p + 1 >= s.size() || s[p + 1] != 'K') parse_fail(s, p + 1, "expected 'K' after '+'");
        r.kx = 1;
        p += 2;
    }
    return r;
}

NSClass parse_ns(const std::string& text) {
    size_t p = 0;
    NSClass r = parse_ns_at(text, p);
    p = skip_ws(text, p);
    if (p != text.size()) parse_fail(text, p, "trailing characters");
    return r;
}

} // namespace enr
