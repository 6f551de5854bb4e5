// Arbitrary-precision real numbers on top of MPFR, plus the PrecisionContext
// that is threaded through all numerical routines.
//
// Every Real carries its own mantissa precision; binary operations produce a
// result at the larger of the two operand precisions. There is no global
// precision state: code that needs constants at a particular precision makes
// them through a PrecisionContext (or an explicit bit count).
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "dwsv/errors.hpp"

namespace dwsv {

class Real {
public:
    // Default: zero at double-equivalent precision. Provided for containers;
    // numerical code should construct values with an explicit precision.
    Real() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }

    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const char* s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0)
            throw ParameterDomainError(std::string("unparseable number: ") + s);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, MPFR_PREC_MIN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) {
            mpfr_swap(v_, o.v_);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    // Same value re-rounded to a new precision.
    Real to_prec(mpfr_prec_t p) const {
        Real r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Scientific notation with the given number of significant digits,
    // locale-independent. Example: -1.2345678901234567890e-03.
    std::string str(int sig_digits = 20) const;

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    // 2^e, exact.
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

#define DWSV_REAL_BINOP(op, fn)                                        \
    friend Real operator op(const Real& a, const Real& b) {            \
        Real r(std::max(a.prec(), b.prec()));                          \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                               \
        return r;                                                      \
    }                                                                  \
    friend Real operator op(const Real& a, long b) {                   \
        Real r(a.prec());                                              \
        fn##_si(r.v_, a.v_, b, MPFR_RNDN);                             \
        return r;                                                      \
    }                                                                  \
    friend Real operator op(const Real& a, int b) { return a op static_cast<long>(b); }

    DWSV_REAL_BINOP(+, mpfr_add)
    DWSV_REAL_BINOP(-, mpfr_sub)
    DWSV_REAL_BINOP(*, mpfr_mul)
    DWSV_REAL_BINOP(/, mpfr_div)
#undef DWSV_REAL_BINOP

    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator!=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) != 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
    friend bool operator<(const Real& a, int b) { return a < static_cast<long>(b); }
    friend bool operator>(const Real& a, int b) { return a > static_cast<long>(b); }
    friend bool operator<=(const Real& a, int b) { return a <= static_cast<long>(b); }
    friend bool operator>=(const Real& a, int b) { return a >= static_cast<long>(b); }

#define DWSV_REAL_FN(name, fn)                      \
    friend Real name(const Real& a) {               \
        Real r(a.prec());                           \
        fn(r.v_, a.v_, MPFR_RNDN);                  \
        return r;                                   \
    }

    DWSV_REAL_FN(abs, mpfr_abs)
    DWSV_REAL_FN(sqrt, mpfr_sqrt)
    DWSV_REAL_FN(exp, mpfr_exp)
    DWSV_REAL_FN(log, mpfr_log)
    DWSV_REAL_FN(sin, mpfr_sin)
    DWSV_REAL_FN(cos, mpfr_cos)
    DWSV_REAL_FN(tan, mpfr_tan)
    DWSV_REAL_FN(cot, mpfr_cot)
    DWSV_REAL_FN(atan, mpfr_atan)
    DWSV_REAL_FN(asin, mpfr_asin)
    DWSV_REAL_FN(acos, mpfr_acos)
    DWSV_REAL_FN(sinh, mpfr_sinh)
    DWSV_REAL_FN(cosh, mpfr_cosh)
    DWSV_REAL_FN(tanh, mpfr_tanh)
    DWSV_REAL_FN(coth, mpfr_coth)
    DWSV_REAL_FN(asinh, mpfr_asinh)
    DWSV_REAL_FN(acosh, mpfr_acosh)
    DWSV_REAL_FN(atanh, mpfr_atanh)
#undef DWSV_REAL_FN

    friend Real pow_si(const Real& a, long e) {
        Real r(a.prec());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real rootn(const Real& a, unsigned long n) {
        Real r(a.prec());
        mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend Real atan2(const Real& y, const Real& x) {
        Real r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    // Remainder of a/b, result in [-|b|/2, |b|/2].
    friend Real remainder(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_remainder(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend void sin_cos(Real& s, Real& c, const Real& x) {
        mpfr_set_prec(s.v_, x.prec());
        mpfr_set_prec(c.v_, x.prec());
        mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    }
    friend void sinh_cosh(Real& s, Real& c, const Real& x) {
        mpfr_set_prec(s.v_, x.prec());
        mpfr_set_prec(c.v_, x.prec());
        mpfr_sinh_cosh(s.v_, c.v_, x.v_, MPFR_RNDN);
    }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

private:
    mpfr_t v_;
};

// Working precision plus tolerances, passed explicitly to every numerical
// routine. series_tol bounds theta/elliptic series truncation;
// modular_threshold is the nome above which the imaginary (Jacobi) modular
// transformation replaces direct summation.
struct PrecisionContext {
    long bits = 256;
    long tol_shift = 8;              // series_tol = 2^(tol_shift - bits)
    double modular_threshold = 0.5;  // in (0,1)
    long max_bits = 65536;           // adaptive-escalation cap

    PrecisionContext() = default;
    explicit PrecisionContext(long b, long shift = 8, double thresh = 0.5, long cap = 65536)
        : bits(b), tol_shift(shift), modular_threshold(thresh), max_bits(cap) {
        if (bits < 64) throw ParameterDomainError("PrecisionContext: bits must be >= 64");
        if (tol_shift > 8) throw ParameterDomainError("PrecisionContext: series_tol above 2^(8-bits)");
        if (!(modular_threshold > 0.0 && modular_threshold < 1.0))
            throw ParameterDomainError("PrecisionContext: modular_threshold outside (0,1)");
        if (max_bits < bits) throw ParameterDomainError("PrecisionContext: max_bits below bits");
    }

    mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits); }
    Real series_tol() const { return Real::pow2(tol_shift - bits, prec()); }
    PrecisionContext with_bits(long b) const {
        return PrecisionContext(b, tol_shift, modular_threshold, std::max(b, max_bits));
    }

    Real make(double x) const { return Real(x, prec()); }
    Real make(long x) const { return Real(x, prec()); }
    Real make(int x) const { return Real(static_cast<long>(x), prec()); }
    Real make(const char* s) const { return Real(s, prec()); }
    Real pi() const { return Real::pi(prec()); }
};

} // namespace dwsv
