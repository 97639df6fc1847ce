// The Neron-Severi lattice of an (unnodal) Enriques surface modulo torsion:
// NS_f = U + E8(-1), rank 10, even, unimodular, signature (1,9).  Classes
// additionally carry the torsion bit for K_X, which every pairing ignores.
//
// Fixed basis: coordinates 0,1 span the hyperbolic plane U (e1, e2 with
// (e1,e2)=1, (ei,ei)=0); coordinates 2..9 are the simple roots of E8(-1) in
// Bourbaki node order (edges 1-3,3-4,4-5,5-6,6-7,7-8 and 2-4), so the Gram
// block has -2 on the diagonal and +1 for adjacent nodes.

#pragma once

#include "enr/bigint.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace enr {

inline constexpr int kRank = 10;

class GramLattice {
  public:
    GramLattice();

    int entry(int i, int j) const { return gram_[i][j]; }
    const std::array<std::array<int, kRank>, kRank>& matrix() const { return gram_; }

    // |det| as a signed integer (it is -1 for this lattice).
    Int determinant() const;
    bool is_symmetric() const;
    bool is_even() const;
    // Number of positive / negative pivots of the quadratic form.
    std::pair<int, int> signature() const;

  private:
    std::array<std::array<int, kRank>, kRank> gram_;
};

// The single Gram matrix every operation pairs against.
const GramLattice& gram();

struct NSClass {
    std::array<Int, kRank> c{};
    int kx = 0; // coefficient of K_X in {0,1}; numerically trivial

    NSClass() = default;
    explicit NSClass(std::array<Int, kRank> coords, int torsion = 0);

    bool is_zero() const;
    bool operator==(const NSClass& o) const { return c == o.c && kx == o.kx; }
    NSClass operator+(const NSClass& o) const;
    NSClass operator-(const NSClass& o) const;
    NSClass operator-() const;
    NSClass operator*(const Int& k) const;

    // gcd of the ten coordinates (0 for the zero class); the kx bit is not part
    // of the content.
    Int content() const;
    bool divisible_by(const Int& k) const;
    NSClass divided_by(const Int& k) const;
};

NSClass ns_zero();
// Basis classes: e1(), e2() span U; e8_root(i) for i in 0..7 are the E8(-1)
// simple roots (coordinates 2..9).
NSClass e1();
NSClass e2();
NSClass e8_root(int i);

// Intersection pairing x.gram.y on the coordinate parts; torsion bits ignored.
Int pair_ns(const NSClass& x, const NSClass& y);
Int norm_ns(const NSClass& x);

// Componentwise reduction mod 2 of the ten coordinates and the kx bit.
std::array<int, kRank + 1> mod2_class(const NSClass& x);
bool same_mod2(const NSClass& x, const NSClass& y);

struct PolarizationClass {
    NSClass h;

    // Requires (h^2) > 0 and (h, e1+e2) > 0, with kx = 0.
    explicit PolarizationClass(NSClass v);
};

// Text format: [a1,...,a10] or [a1,...,a10]+K.  Errors carry the offset of the
// offending character.
std::string to_text(const NSClass& x);
NSClass parse_ns(const std::string& text);
// Incremental parser used by the Mukai-vector reader; advances p past the class.
NSClass parse_ns_at(const std::string& s, size_t& p);

} // namespace enr
