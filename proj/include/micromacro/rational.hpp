#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace micromacro {

// All probabilities and kernel entries are exact rationals. Construct
// fractions through frac(): the raw two-argument mpq_class constructor does
// not reduce, and comparisons on unreduced values are unreliable.
using Rational = mpq_class;
using BigInt = mpz_class;

template <typename A>
Rational frac(const A& num) {
    return Rational(num);
}

template <typename A, typename B>
Rational frac(const A& num, const B& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat(long num, long den = 1) { return frac(num, den); }

// Parses "a/b" or "a". Throws ValidationError on garbage or zero denominator.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Prime factorization by trial division; v must be >= 1.
// Returns (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<BigInt, unsigned long>> factorize(const BigInt& v);

}  // namespace micromacro
