/**
 * Exact arithmetic scalars used everywhere in tropicore.
 *
 * All numbers in the library are arbitrary-precision integers or rationals;
 * there is no floating point anywhere. Coordinates of points in tropical
 * affine space are rationals extended by the symbol -inf per coordinate.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropicore {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Renders a rational as "p/q" with q > 0 and gcd(p,q) = 1; integers as "p/1"
/// would be noisy, so plain integers are rendered without the "/q" part.
inline std::string to_string(const Rat& r)
{
    if (den(r) == 1)
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline std::string to_string(const Int& n) { return n.str(); }

/// Parses "p", "p/q" or a decimal-free signed integer string.
inline Rat parse_rat(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

/**
 * One coordinate of a point in tropical affine space: a rational number or
 * the bottom element -inf.
 */
struct TCoord
{
    bool minus_inf = false;
    Rat value;  // meaningful only when !minus_inf

    TCoord() = default;
    TCoord(const Rat& v) : minus_inf(false), value(v) {}
    static TCoord inf() { TCoord c; c.minus_inf = true; return c; }

    bool operator==(const TCoord& o) const
    {
        if (minus_inf != o.minus_inf) return false;
        return minus_inf || value == o.value;
    }
    bool operator!=(const TCoord& o) const { return !(*this == o); }
};

using TPoint = std::vector<TCoord>;  // point of T^N
using RatVec = std::vector<Rat>;     // point/vector of Q^N
using IntVec = std::vector<Int>;     // lattice vector

inline std::string to_string(const TCoord& c)
{
    return c.minus_inf ? std::string("-inf") : to_string(c.value);
}

inline TCoord parse_tcoord(const std::string& s)
{
    if (s == "-inf") return TCoord::inf();
    return TCoord(parse_rat(s));
}

inline RatVec operator+(const RatVec& a, const RatVec& b)
{
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b)
{
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec operator*(const Rat& c, const RatVec& v)
{
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline bool is_zero(const RatVec& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline RatVec to_rat(const IntVec& v)
{
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

/// Clears denominators and divides by the content; the zero vector maps to
/// itself. The sign of the first nonzero entry is preserved.
inline IntVec primitive(const RatVec& v)
{
    Int l = 1;
    for (const auto& x : v) l = lcm(l, den(x));
    IntVec w(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = num(v[i]) * (l / den(v[i]));
        g = gcd(g, w[i]);
    }
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

inline IntVec primitive(const IntVec& v) { return primitive(to_rat(v)); }

}  // namespace tropicore
