#include "micromacro/rational.hpp"

#include "micromacro/errors.hpp"

namespace micromacro {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    for (char c : text) {
        if (c != '-' && c != '/' && (c < '0' || c > '9'))
            throw ValidationError("bad rational literal: " + text);
    }
    Rational r;
    if (r.set_str(text, 10) != 0) throw ValidationError("bad rational literal: " + text);
    if (r.get_den() == 0) throw ValidationError("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

std::vector<std::pair<BigInt, unsigned long>> factorize(const BigInt& v) {
    if (v < 1) throw ValidationError("factorize: argument must be >= 1");
    std::vector<std::pair<BigInt, unsigned long>> out;
    BigInt rest = v;
    auto strip = [&](const BigInt& p) {
        unsigned long e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (BigInt p = 3; p * p <= rest; p += 2) strip(p);
    if (rest > 1) out.emplace_back(rest, 1);
    return out;
}

}  // namespace micromacro
