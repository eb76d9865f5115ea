#pragma once

#include <map>
#include <string>

#include "micromacro/rational.hpp"

namespace micromacro {

// Exact value of the form  c + sum_p coeff[p] * ln(p)  with c and all
// coefficients rational and p prime. Every entropy in this library is such a
// value, because every probability is rational. Equality is decidable by
// comparing representations (the ln p are linearly independent over Q, and a
// rational constant can only cancel them when everything vanishes), and the
// sign of a nonzero value is decided by interval evaluation at escalating
// precision.
class LogValue {
public:
    LogValue() = default;

    static LogValue constant(const Rational& c);
    static LogValue log_integer(const BigInt& v);    // ln v, v >= 1
    static LogValue log_rational(const Rational& r); // ln r, r > 0

    LogValue& operator+=(const LogValue& o);
    LogValue& operator-=(const LogValue& o);
    LogValue& operator*=(const Rational& s);
    friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
    friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
    friend LogValue operator*(LogValue a, const Rational& s) { return a *= s; }
    friend LogValue operator*(const Rational& s, LogValue a) { return a *= s; }
    LogValue operator-() const;

    bool is_zero() const { return constant_ == 0 && coeffs_.empty(); }
    bool operator==(const LogValue& o) const {
        return constant_ == o.constant_ && coeffs_ == o.coeffs_;
    }

    // -1, 0 or +1, exactly.
    int sign() const;

    bool operator<(const LogValue& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const LogValue& o) const { return (*this - o).sign() <= 0; }

    double to_double() const;
    std::string to_string() const;

    const Rational& constant_part() const { return constant_; }
    const std::map<BigInt, Rational>& log_coeffs() const { return coeffs_; }

private:
    Rational constant_ = 0;
    std::map<BigInt, Rational> coeffs_;  // prime -> coefficient, no zeros
};

}  // namespace micromacro
