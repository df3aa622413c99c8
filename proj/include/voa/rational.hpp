#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace voa {

// Arbitrary-precision rational, always in lowest terms with positive denominator
// (GMP canonicalizes on every operation).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// binom(q, r) for arbitrary integer q and r >= 0.
inline Rational binomial(long long q, long long r) {
    if (r < 0) return 0;
    Rational acc = 1;
    for (long long i = 0; i < r; ++i) acc *= Rational(q - i, i + 1);
    return acc;
}

inline Rational falling_factorial(long long n, long long r) {
    Rational acc = 1;
    for (long long i = 0; i < r; ++i) acc *= (n - i);
    return acc;
}

inline Rational rational_pow(const Rational& base, long long e) {
    Rational acc = 1;
    for (long long i = 0; i < e; ++i) acc *= base;
    return acc;
}

inline Rational factorial(long long n) {
    Rational acc = 1;
    for (long long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace voa
