#pragma once

// Exact rational arithmetic used for all coefficient synthesis.
// Backed by boost::multiprecision (arbitrary precision, canonical form:
// denominator > 0, gcd(|num|, den) = 1 is maintained after every operation).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long long num, long long den = 1) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    return Rational(num, den);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r);
}

/// Format as "p/q", or just "p" when q = 1.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Parse "p", "-p", or "p/q" (q > 0 after normalization).
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("parse_rational: zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::domain_error("parse_rational: malformed rational '" + s + "'");
    }
}

inline Rational factorial(unsigned n) {
    Rational r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rational binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

/// r^e with 0^0 = 1 (the convention needed by the Taylor-constant sums).
inline Rational pow_rational(const Rational& r, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= r;
    return out;
}

}  // namespace lmm
