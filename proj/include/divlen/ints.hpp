#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace divlen {

// All exact arithmetic in this library runs on these two types. No numeric
// result is ever routed through floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, long exp) {
    if (exp < 0) throw std::domain_error("pow_int: negative exponent");
    Int r = 1, b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Floored division and the matching non-negative remainder, valid for
// negative dividends as well (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_nonneg(const Int& a, const Int& b) {
    Int r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

// Largest x with x*x <= n, by Newton bracketing on integers.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    if (n < 2) return n;
    Int x = Int(1) << (unsigned)((boost::multiprecision::msb(n) / 2) + 1);
    while (true) {
        Int y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while (x * x > n) --x;
    return x;
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || (n >= 0 && k > n)) return 0;
    if (n < 0) {
        // C(n,k) = (-1)^k C(k-n-1, k) keeps power-moment style identities exact.
        Int v = binomial(k - n - 1, k);
        return (k % 2 == 0) ? v : -v;
    }
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num = 1;
    for (Int i = 0; i < kk; ++i) {
        num *= (n - i);
        num /= (i + 1);  // exact: product of j consecutive integers is divisible by j!
    }
    return num;
}

// p-adic valuation; nullopt encodes v_p(0) = infinity.
inline std::optional<long> vp(const Int& x, const Int& p) {
    if (p < 2) throw std::domain_error("vp: p must be >= 2");
    if (x == 0) return std::nullopt;
    Int y = (x < 0) ? Int(-x) : x;
    long v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace divlen
