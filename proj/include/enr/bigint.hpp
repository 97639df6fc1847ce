// Exact integer and rational arithmetic used throughout the library.
// No floating point is used anywhere in the lattice computations.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace enr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Quotient a/b, throwing if b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("exact_div: division by zero");
    Int q = a / b, r = a % b;
    if (r != 0) throw std::domain_error("exact_div: not divisible");
    return q;
}

inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline bool is_even(const Int& a) { return (a & 1) == 0; }

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    return Rat(num, den);
}

inline long long to_ll(const Int& a) {
    if (a < std::numeric_limits<long long>::min() || a > std::numeric_limits<long long>::max())
        throw std::domain_error("to_ll: value exceeds 64-bit range");
    return a.convert_to<long long>();
}

inline std::string to_string(const Int& a) { return a.str(); }

} // namespace enr
