#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "gconst/context.hpp"

namespace gconst {

using BigInteger = mpz_class;
using RationalCoeff = mpq_class;

// Midpoint-radius interval ("ball") real number.  The midpoint is an MPFR
// float at some working precision; the radius is a nonnegative MPFR float at a
// small fixed precision whose every update rounds upward, so the invariant
//
//     true value in [mid - rad, mid + rad]
//
// survives every operation.  Operations never mutate their inputs and share no
// global state, so distinct Real values may be used from different threads.
class Real {
  public:
    static constexpr mpfr_prec_t radius_prec = 64;

    Real() : Real(static_cast<mpfr_prec_t>(64)) {}
    explicit Real(mpfr_prec_t prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    // --- exact constructors -------------------------------------------------
    static Real exact_si(long v, mpfr_prec_t prec);
    static Real exact_ui(unsigned long v, mpfr_prec_t prec);
    // Encloses an exact integer / rational; radius is 0 when the value fits
    // the precision and 1 ulp otherwise.
    static Real from_integer(const BigInteger& z, mpfr_prec_t prec);
    static Real from_rational(const RationalCoeff& q, mpfr_prec_t prec);
    // Exact dyadic m * 2^e.
    static Real dyadic(long m, long e2, mpfr_prec_t prec);

    // --- accessors ----------------------------------------------------------
    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
    const __mpfr_struct* mid() const { return mid_; }
    const __mpfr_struct* rad() const { return rad_; }
    bool is_exact() const { return mpfr_zero_p(rad_); }
    bool mid_is_zero() const { return mpfr_zero_p(mid_); }
    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // Exact rational endpoints (midpoint and radius are dyadic, so these are
    // lossless).  Used by the containment/intersection predicates and tests.
    RationalCoeff lower_exact() const;
    RationalCoeff upper_exact() const;
    RationalCoeff mid_exact() const;

    // --- predicates (all decided exactly) -----------------------------------
    bool contains_zero() const;
    // Certain sign: +1 if the whole ball is > 0, -1 if < 0, 0 if it straddles.
    int certain_sign() const;
    bool contains(const Real& inner) const;   // [inner] subset of [this]
    bool intersects(const Real& other) const;
    // this.upper < other.lower, decided exactly.
    bool certainly_less(const Real& other) const;

    // Upper bound on |value|: an exponent E with |mid|+rad <= 2^E, or the
    // bound itself rounded up into `out`.  Cheap; used for loop cutoffs.
    long mag_exponent() const;  // LONG_MIN when the ball is exactly 0
    void mag_upper(mpfr_t out) const;

    // --- in-place radius adjustments ----------------------------------------
    // Inflate the radius by a nonnegative error bound (|b.mid| + b.rad).
    void add_error(const Real& bound);
    void add_error_2exp(long e2);  // radius += 2^e2

    // Internal: mutable handles for the implementation.
    __mpfr_struct* mid_raw() { return mid_; }
    __mpfr_struct* rad_raw() { return rad_; }

  private:
    mpfr_t mid_;
    mpfr_t rad_;
};

// --- arithmetic (result precision = max of operand midpoint precisions) -----
Real add(const Real& a, const Real& b);
Real sub(const Real& a, const Real& b);
Real mul(const Real& a, const Real& b);
// Throws std::domain_error when the divisor ball contains zero.
Real div(const Real& a, const Real& b);
Real neg(const Real& a);
Real abs_ball(const Real& a);
Real mul_2exp(const Real& a, long e2);  // exact scaling by 2^e2
Real mul_si(const Real& a, long k);
Real div_ui(const Real& a, unsigned long k);
Real mul_rational(const Real& a, const RationalCoeff& q);

inline Real operator+(const Real& a, const Real& b) { return add(a, b); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b); }
inline Real operator-(const Real& a) { return neg(a); }

// Named dispatch used by generic code and the operation-sequence tests.
enum class BallOp { Add, Sub, Mul, Div };
Real ball_arith(const Real& a, const Real& b, BallOp op);

// --- elementary functions (monotone endpoint evaluation) --------------------
Real exp_ball(const Real& a);
Real log_ball(const Real& a);    // domain error unless the ball is > 0
Real log1p_ball(const Real& a);  // domain error unless the ball is > -1
Real sqrt_ball(const Real& a);   // domain error unless the ball is >= 0
Real pow_int(const Real& a, long e);

enum class BallFun { Exp, Log, Sqrt };
Real ball_elementary(const Real& a, BallFun f);

// --- decimal conversion ------------------------------------------------------
struct DecimalResult {
    std::string text;
    bool certified = false;
};

// Parse a signed decimal literal (optional fraction and exponent) into a ball
// whose radius is at most 1 ulp at ctx.working_bits (0 when the conversion is
// exact).  Throws std::invalid_argument on any other input.
Real enclose_decimal(const std::string& s, const PrecisionContext& ctx);

// `digits` decimal places after the point.  Certified iff every point of the
// ball produces the same string under the respective convention:
// to_decimal rounds (half away from zero); to_decimal_trunc truncates toward
// zero, which is the table-rendering convention.  When uncertified, the
// midpoint's rendering is returned with certified=false.
DecimalResult to_decimal(const Real& x, int digits);
DecimalResult to_decimal_trunc(const Real& x, int digits);

}  // namespace gconst
