#include "gconst/ball.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <climits>
#include <stdexcept>

namespace gconst {

namespace {

// One-ulp upper bound on the rounding error of the last midpoint operation.
// `tern` is MPFR's ternary result: 0 means the value was exact and there is
// nothing to account for.
void bump_radius_for_rounding(mpfr_t rad, const mpfr_t mid, int tern) {
    if (tern == 0 || mpfr_zero_p(mid) || !mpfr_number_p(mid)) return;
    mpfr_exp_t e = mpfr_get_exp(mid);
    mpfr_prec_t p = mpfr_get_prec(mid);
    mpfr_t ulp;
    mpfr_init2(ulp, 32);
    mpfr_set_ui_2exp(ulp, 1, e - p, MPFR_RNDU);
    mpfr_add(rad, rad, ulp, MPFR_RNDU);
    mpfr_clear(ulp);
}

void require_number(const mpfr_t x, const char* what) {
    if (!mpfr_number_p(x)) throw std::domain_error(std::string(what) + ": non-finite value");
}

RationalCoeff mpfr_to_rational(const mpfr_t x) {
    if (mpfr_zero_p(x)) return RationalCoeff(0);
    if (!mpfr_number_p(x)) throw std::domain_error("mpfr_to_rational: non-finite value");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

}  // namespace

// --- lifecycle ----------------------------------------------------------------

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(mid_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN));
    mpfr_init2(rad_, radius_prec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_init2(rad_, radius_prec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(mid_, MPFR_PREC_MIN);
    mpfr_init2(rad_, radius_prec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) {
        mpfr_swap(mid_, o.mid_);
        mpfr_swap(rad_, o.rad_);
    }
    return *this;
}

Real::~Real() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

// --- constructors ---------------------------------------------------------------

Real Real::exact_si(long v, mpfr_prec_t prec) {
    Real r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    bump_radius_for_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::exact_ui(unsigned long v, mpfr_prec_t prec) {
    Real r(prec);
    int t = mpfr_set_ui(r.mid_, v, MPFR_RNDN);
    bump_radius_for_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::from_integer(const BigInteger& z, mpfr_prec_t prec) {
    Real r(prec);
    int t = mpfr_set_z(r.mid_, z.get_mpz_t(), MPFR_RNDN);
    bump_radius_for_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::from_rational(const RationalCoeff& q, mpfr_prec_t prec) {
    Real r(prec);
    int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
    bump_radius_for_rounding(r.rad_, r.mid_, t);
    return r;
}

Real Real::dyadic(long m, long e2, mpfr_prec_t prec) {
    Real r(prec);
    int t = mpfr_set_si_2exp(r.mid_, m, e2, MPFR_RNDN);
    bump_radius_for_rounding(r.rad_, r.mid_, t);
    return r;
}

// --- exact endpoint access -------------------------------------------------------

RationalCoeff Real::mid_exact() const { return mpfr_to_rational(mid_); }

RationalCoeff Real::lower_exact() const { return mpfr_to_rational(mid_) - mpfr_to_rational(rad_); }

RationalCoeff Real::upper_exact() const { return mpfr_to_rational(mid_) + mpfr_to_rational(rad_); }

// --- predicates ------------------------------------------------------------------

bool Real::contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }

int Real::certain_sign() const {
    if (contains_zero()) return 0;
    return mpfr_sgn(mid_) > 0 ? 1 : -1;
}

bool Real::contains(const Real& inner) const {
    return lower_exact() <= inner.lower_exact() && inner.upper_exact() <= upper_exact();
}

bool Real::intersects(const Real& other) const {
    return lower_exact() <= other.upper_exact() && other.lower_exact() <= upper_exact();
}

bool Real::certainly_less(const Real& other) const {
    return upper_exact() < other.lower_exact();
}

long Real::mag_exponent() const {
    bool mz = mpfr_zero_p(mid_), rz = mpfr_zero_p(rad_);
    if (mz && rz) return LONG_MIN;
    long e = LONG_MIN;
    if (!mz) e = std::max(e, static_cast<long>(mpfr_get_exp(mid_)));
    if (!rz) e = std::max(e, static_cast<long>(mpfr_get_exp(rad_)));
    return e + 1;
}

void Real::mag_upper(mpfr_t out) const {
    mpfr_abs(out, mid_, MPFR_RNDU);
    mpfr_add(out, out, rad_, MPFR_RNDU);
}

void Real::add_error(const Real& bound) {
    mpfr_t t;
    mpfr_init2(t, radius_prec);
    bound.mag_upper(t);
    mpfr_add(rad_, rad_, t, MPFR_RNDU);
    mpfr_clear(t);
}

void Real::add_error_2exp(long e2) {
    mpfr_t t;
    mpfr_init2(t, 32);
    mpfr_set_ui_2exp(t, 1, e2, MPFR_RNDU);
    mpfr_add(rad_, rad_, t, MPFR_RNDU);
    mpfr_clear(t);
}

// --- arithmetic ------------------------------------------------------------------

namespace {
mpfr_prec_t result_prec(const Real& a, const Real& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

Real add(const Real& a, const Real& b) {
    Real r(result_prec(a, b));
    int t = mpfr_add(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    require_number(r.mid_raw(), "add");
    mpfr_add(r.rad_raw(), a.rad(), b.rad(), MPFR_RNDU);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real sub(const Real& a, const Real& b) {
    Real r(result_prec(a, b));
    int t = mpfr_sub(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    require_number(r.mid_raw(), "sub");
    mpfr_add(r.rad_raw(), a.rad(), b.rad(), MPFR_RNDU);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real mul(const Real& a, const Real& b) {
    Real r(result_prec(a, b));
    int t = mpfr_mul(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    require_number(r.mid_raw(), "mul");
    // |am|*rb + |bm|*ra + ra*rb, all rounded up.
    mpfr_t am, bm, term;
    mpfr_init2(am, Real::radius_prec);
    mpfr_init2(bm, Real::radius_prec);
    mpfr_init2(term, Real::radius_prec);
    mpfr_abs(am, a.mid(), MPFR_RNDU);
    mpfr_abs(bm, b.mid(), MPFR_RNDU);
    mpfr_mul(term, am, b.rad(), MPFR_RNDU);
    mpfr_set(r.rad_raw(), term, MPFR_RNDU);
    mpfr_mul(term, bm, a.rad(), MPFR_RNDU);
    mpfr_add(r.rad_raw(), r.rad_raw(), term, MPFR_RNDU);
    mpfr_mul(term, a.rad(), b.rad(), MPFR_RNDU);
    mpfr_add(r.rad_raw(), r.rad_raw(), term, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(bm);
    mpfr_clear(term);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real div(const Real& a, const Real& b) {
    if (b.contains_zero()) throw std::domain_error("div: divisor ball contains zero");
    Real r(result_prec(a, b));
    int t = mpfr_div(r.mid_raw(), a.mid(), b.mid(), MPFR_RNDN);
    require_number(r.mid_raw(), "div");
    // (|am|*rb + |bm|*ra) / ((|bm| - rb) * |bm|), numerator up, denominator down.
    mpfr_t am, bm, num, den, term;
    mpfr_init2(am, Real::radius_prec);
    mpfr_init2(bm, Real::radius_prec);
    mpfr_init2(num, Real::radius_prec);
    mpfr_init2(den, Real::radius_prec);
    mpfr_init2(term, Real::radius_prec);
    mpfr_abs(am, a.mid(), MPFR_RNDU);
    mpfr_abs(bm, b.mid(), MPFR_RNDU);
    mpfr_mul(num, am, b.rad(), MPFR_RNDU);
    mpfr_mul(term, bm, a.rad(), MPFR_RNDU);
    mpfr_add(num, num, term, MPFR_RNDU);
    mpfr_abs(den, b.mid(), MPFR_RNDD);
    mpfr_sub(den, den, b.rad(), MPFR_RNDD);
    mpfr_abs(term, b.mid(), MPFR_RNDD);
    mpfr_mul(den, den, term, MPFR_RNDD);
    mpfr_div(r.rad_raw(), num, den, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(bm);
    mpfr_clear(num);
    mpfr_clear(den);
    mpfr_clear(term);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real neg(const Real& a) {
    Real r(a);
    mpfr_neg(r.mid_raw(), r.mid_raw(), MPFR_RNDN);  // exact
    return r;
}

Real abs_ball(const Real& a) {
    Real r(a);
    mpfr_abs(r.mid_raw(), r.mid_raw(), MPFR_RNDN);  // exact
    return r;
}

Real mul_2exp(const Real& a, long e2) {
    Real r(a);
    mpfr_mul_2si(r.mid_raw(), r.mid_raw(), e2, MPFR_RNDN);  // exact
    mpfr_mul_2si(r.rad_raw(), r.rad_raw(), e2, MPFR_RNDU);
    return r;
}

Real mul_si(const Real& a, long k) {
    Real r(a.precision());
    int t = mpfr_mul_si(r.mid_raw(), a.mid(), k, MPFR_RNDN);
    mpfr_mul_ui(r.rad_raw(), a.rad(), static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDU);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real div_ui(const Real& a, unsigned long k) {
    if (k == 0) throw std::domain_error("div_ui: zero divisor");
    Real r(a.precision());
    int t = mpfr_div_ui(r.mid_raw(), a.mid(), k, MPFR_RNDN);
    mpfr_div_ui(r.rad_raw(), a.rad(), k, MPFR_RNDU);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
    return r;
}

Real mul_rational(const Real& a, const RationalCoeff& q) {
    return mul(a, Real::from_rational(q, a.precision()));
}

Real ball_arith(const Real& a, const Real& b, BallOp op) {
    switch (op) {
        case BallOp::Add: return add(a, b);
        case BallOp::Sub: return sub(a, b);
        case BallOp::Mul: return mul(a, b);
        case BallOp::Div: return div(a, b);
    }
    throw std::logic_error("ball_arith: bad op");
}

// --- elementary functions ---------------------------------------------------------

namespace {

using MpfrUnary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Enclosure of a monotone-increasing elementary function: evaluate at the ball
// endpoints with outward rounding, center at f(mid).
// domain_sign: 0 none, 1 requires >= 0, 2 requires > 0, 3 requires > -1.
Real monotone_enclosure(const Real& a, MpfrUnary f, const char* name, int domain_sign) {
    if (domain_sign > 0) {
        RationalCoeff lo = a.lower_exact();
        if ((domain_sign == 2 && lo <= 0) || (domain_sign == 1 && lo < 0) ||
            (domain_sign == 3 && lo <= -1))
            throw std::domain_error(std::string(name) + ": ball extends outside the domain");
    }
    mpfr_prec_t p = a.precision();
    Real r(p);

    if (a.is_exact()) {
        int t = f(r.mid_raw(), a.mid(), MPFR_RNDN);
        require_number(r.mid_raw(), name);
        bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t);
        return r;
    }

    mpfr_t lo, hi, flo, fhi, d1, d2;
    mpfr_init2(lo, p + 64);
    mpfr_init2(hi, p + 64);
    mpfr_init2(flo, p);
    mpfr_init2(fhi, p);
    mpfr_init2(d1, Real::radius_prec);
    mpfr_init2(d2, Real::radius_prec);

    mpfr_sub(lo, a.mid(), a.rad(), MPFR_RNDD);
    mpfr_add(hi, a.mid(), a.rad(), MPFR_RNDU);
    if (domain_sign == 1 && mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);  // sqrt: clamp -0-ish slack

    f(flo, lo, MPFR_RNDD);
    f(fhi, hi, MPFR_RNDU);
    int t = f(r.mid_raw(), a.mid(), MPFR_RNDN);
    require_number(r.mid_raw(), name);
    require_number(fhi, name);

    mpfr_sub(d1, fhi, r.mid_raw(), MPFR_RNDU);
    mpfr_sub(d2, r.mid_raw(), flo, MPFR_RNDU);
    if (mpfr_cmp(d1, d2) < 0) mpfr_swap(d1, d2);
    if (mpfr_sgn(d1) < 0) mpfr_set_zero(d1, 1);
    mpfr_set(r.rad_raw(), d1, MPFR_RNDU);
    bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), t ? t : 1);

    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(flo);
    mpfr_clear(fhi);
    mpfr_clear(d1);
    mpfr_clear(d2);
    return r;
}

}  // namespace

Real exp_ball(const Real& a) { return monotone_enclosure(a, mpfr_exp, "exp", 0); }

Real log_ball(const Real& a) { return monotone_enclosure(a, mpfr_log, "log", 2); }

Real log1p_ball(const Real& a) { return monotone_enclosure(a, mpfr_log1p, "log1p", 3); }

Real sqrt_ball(const Real& a) { return monotone_enclosure(a, mpfr_sqrt, "sqrt", 1); }

Real pow_int(const Real& a, long e) {
    if (e == 0) return Real::exact_ui(1, a.precision());
    if (e < 0) return div(Real::exact_ui(1, a.precision()), pow_int(a, -e));
    // Binary exponentiation over ball multiplication.
    Real base(a);
    Real acc = Real::exact_ui(1, a.precision());
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1UL) acc = mul(acc, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

Real ball_elementary(const Real& a, BallFun f) {
    switch (f) {
        case BallFun::Exp: return exp_ball(a);
        case BallFun::Log: return log_ball(a);
        case BallFun::Sqrt: return sqrt_ball(a);
    }
    throw std::logic_error("ball_elementary: bad function");
}

// --- decimal I/O -------------------------------------------------------------------

namespace {

bool valid_decimal_literal(const std::string& s) {
    size_t i = 0, n = s.size();
    if (n == 0) return false;
    if (s[i] == '+' || s[i] == '-') ++i;
    size_t int_digits = 0, frac_digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++int_digits;
    if (i < n && s[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac_digits;
    }
    if (int_digits + frac_digits == 0) return false;
    if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
        size_t exp_digits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
        if (exp_digits == 0) return false;
    }
    return i == n;
}

// Fixed-point rendering of an exact rational at `digits` decimal places.
// mode 0: truncate toward zero; mode 1: round half away from zero.
std::string render_fixed(const RationalCoeff& v, int digits, int mode) {
    bool negative = sgn(v) < 0;
    mpq_class a = abs(mpq_class(v));
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class scaled_num = a.get_num() * pow10;
    mpz_class q;
    if (mode == 0) {
        mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), a.get_den().get_mpz_t());
    } else {
        mpz_class num2 = 2 * scaled_num + a.get_den();
        mpz_class den2 = 2 * a.get_den();
        mpz_fdiv_q(q.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
    }
    mpz_class ip = q / pow10;
    mpz_class fp = q % pow10;
    std::string frac = fp.get_str();
    if (static_cast<int>(frac.size()) < digits)
        frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    std::string out;
    if (negative && q != 0) out += '-';
    out += ip.get_str();
    out += '.';
    out += frac;
    return out;
}

}  // namespace

Real enclose_decimal(const std::string& s, const PrecisionContext& ctx) {
    if (!valid_decimal_literal(s))
        throw std::invalid_argument("enclose_decimal: not a decimal literal: '" + s + "'");
    Real r(ctx.working_bits);
    mpfr_strtofr(r.mid_raw(), s.c_str(), nullptr, 10, MPFR_RNDN);
    // The radius is 0 when the literal is exactly representable and 1 ulp
    // otherwise; decide by comparing against the literal's exact rational.
    RationalCoeff back = r.mid_exact();
    {
        std::string digits_only;
        long exponent10 = 0;
        size_t i = 0;
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
            digits_only += s[i];
        if (i < s.size() && s[i] == '.') {
            ++i;
            for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
                digits_only += s[i];
                --exponent10;
            }
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E'))
            exponent10 += std::stol(s.substr(i + 1));
        // Base must be explicit: the default base-0 parse reads a leading
        // zero ("0.5" collects digits "05") as an octal prefix.
        mpz_class mant(digits_only.empty() ? "0" : digits_only, 10);
        if (neg) mant = -mant;
        mpq_class exact(mant);
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exponent10 < 0 ? -exponent10 : exponent10));
        if (exponent10 < 0)
            exact /= mpq_class(p10);
        else
            exact *= mpq_class(p10);
        if (exact != back) bump_radius_for_rounding(r.rad_raw(), r.mid_raw(), 1);
    }
    return r;
}

namespace {

DecimalResult decimal_common(const Real& x, int digits, int mode) {
    if (digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
    RationalCoeff lo = x.lower_exact();
    RationalCoeff hi = x.upper_exact();
    std::string slo = render_fixed(lo, digits, mode);
    std::string shi = render_fixed(hi, digits, mode);
    if (slo == shi) return DecimalResult{slo, true};
    return DecimalResult{render_fixed(x.mid_exact(), digits, mode), false};
}

}  // namespace

DecimalResult to_decimal(const Real& x, int digits) { return decimal_common(x, digits, 1); }

DecimalResult to_decimal_trunc(const Real& x, int digits) { return decimal_common(x, digits, 0); }

}  // namespace gconst
