#include "micromacro/logvalue.hpp"

#include <mpfr.h>

#include <sstream>

#include "micromacro/errors.hpp"

namespace micromacro {

LogValue LogValue::constant(const Rational& c) {
    LogValue v;
    v.constant_ = c;
    return v;
}

LogValue LogValue::log_integer(const BigInt& v) {
    if (v < 1) throw ValidationError("log_integer: argument must be >= 1");
    LogValue out;
    for (const auto& [p, e] : factorize(v)) out.coeffs_[p] = frac(e);
    return out;
}

LogValue LogValue::log_rational(const Rational& r) {
    if (r <= 0) throw ValidationError("log_rational: argument must be > 0");
    return log_integer(r.get_num()) - log_integer(r.get_den());
}

LogValue& LogValue::operator+=(const LogValue& o) {
    constant_ += o.constant_;
    for (const auto& [p, c] : o.coeffs_) {
        Rational& mine = coeffs_[p];
        mine += c;
        if (mine == 0) coeffs_.erase(p);
    }
    return *this;
}

LogValue& LogValue::operator-=(const LogValue& o) { return *this += -o; }

LogValue& LogValue::operator*=(const Rational& s) {
    if (s == 0) {
        constant_ = 0;
        coeffs_.clear();
        return *this;
    }
    constant_ *= s;
    for (auto& [p, c] : coeffs_) c *= s;
    return *this;
}

LogValue LogValue::operator-() const {
    LogValue out;
    out.constant_ = -constant_;
    for (const auto& [p, c] : coeffs_) out.coeffs_[p] = -c;
    return out;
}

namespace {

// Evaluates constant + sum coeff*ln(p) at the given precision, and also the
// sum of absolute term magnitudes (used for the rounding-error bound).
void evaluate(const Rational& constant, const std::map<BigInt, Rational>& coeffs,
              mpfr_prec_t prec, mpfr_t value, mpfr_t magnitude) {
    mpfr_t term, lg;
    mpfr_init2(term, prec);
    mpfr_init2(lg, prec);
    mpfr_set_q(value, constant.get_mpq_t(), MPFR_RNDN);
    mpfr_abs(magnitude, value, MPFR_RNDU);
    for (const auto& [p, c] : coeffs) {
        mpfr_set_z(lg, p.get_mpz_t(), MPFR_RNDN);
        mpfr_log(lg, lg, MPFR_RNDN);
        mpfr_set_q(term, c.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(term, term, lg, MPFR_RNDN);
        mpfr_add(value, value, term, MPFR_RNDN);
        mpfr_abs(term, term, MPFR_RNDU);
        mpfr_add(magnitude, magnitude, term, MPFR_RNDU);
    }
    mpfr_clear(term);
    mpfr_clear(lg);
}

}  // namespace

int LogValue::sign() const {
    if (coeffs_.empty()) return sgn(constant_);
    // Nonzero representation implies nonzero value (Lindemann plus linear
    // independence of ln p over Q), so escalation terminates.
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
        mpfr_t value, magnitude, err;
        mpfr_init2(value, prec);
        mpfr_init2(magnitude, prec);
        mpfr_init2(err, prec);
        evaluate(constant_, coeffs_, prec, value, magnitude);
        // Each term contributes a handful of roundings of at most 2^-prec
        // relative to the magnitude sum.
        long terms = static_cast<long>(coeffs_.size()) + 1;
        mpfr_mul_si(err, magnitude, 16 * terms, MPFR_RNDU);
        mpfr_mul_2si(err, err, -static_cast<long>(prec), MPFR_RNDU);
        int result = 0;
        bool decided = false;
        if (mpfr_cmpabs(value, err) > 0) {
            result = mpfr_sgn(value);
            decided = true;
        }
        mpfr_clear(value);
        mpfr_clear(magnitude);
        mpfr_clear(err);
        if (decided) return result;
    }
    throw IdentityError("LogValue::sign: interval evaluation did not separate from zero");
}

double LogValue::to_double() const {
    mpfr_t value, magnitude;
    mpfr_init2(value, 256);
    mpfr_init2(magnitude, 256);
    evaluate(constant_, coeffs_, 256, value, magnitude);
    double d = mpfr_get_d(value, MPFR_RNDN);
    mpfr_clear(value);
    mpfr_clear(magnitude);
    return d;
}

std::string LogValue::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (constant_ != 0 || coeffs_.empty()) {
        os << constant_.get_str();
        first = false;
    }
    for (const auto& [p, c] : coeffs_) {
        if (!first) os << " + ";
        os << "(" << c.get_str() << ")*ln(" << p.get_str() << ")";
        first = false;
    }
    return os.str();
}

}  // namespace micromacro
