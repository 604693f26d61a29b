#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "nilmoore/errors.hpp"

namespace nilmoore {

/// Exact arbitrary-precision integers and rationals. No floating point is
/// used anywhere in the library; every value a user sees is a "p/q" string.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Vec = std::vector<Rat>;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

/// Numerator of an integral rational; contract error otherwise.
inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw Error("expected an integer, got " + r.str());
    return numerator(r);
}

/// Floor division (quotient rounded toward -inf), b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Nearest-integer division, ties toward zero. Keeps gcd pivots small.
inline Int round_div(const Int& a, const Int& b) {
    Int q = floor_div(a, b);
    Int r = a - q * b;  // 0 <= r < |b|
    if (2 * r > abs(b)) ++q;
    return q;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

/// Parses "p", "p/q" or "-p/q"; q must be positive after normalization.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw Error("zero denominator in '" + s + "'");
        return Rat(p, q);
    } catch (const std::runtime_error& e) {
        throw Error("bad rational literal '" + s + "'");
    }
}

/// Canonical "p/q" rendering (lowest terms, q > 0); integers render as "p".
inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// -- small exact-vector helpers ----------------------------------------------

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeMismatch("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeMismatch("vec_add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeMismatch("vec_sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_scale(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline void vec_axpy(Vec& acc, const Rat& c, const Vec& a) {
    if (acc.size() != a.size()) throw ShapeMismatch("vec_axpy: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) acc[i] += c * a[i];
}

inline bool vec_is_zero(const Vec& a) {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

inline std::string vec_str(const Vec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(a[i]);
    }
    return s + ")";
}

}  // namespace nilmoore
