#include "gconst/specfun.hpp"

#include <mpfr.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gconst::specfun {

namespace {

// MPFR's constant/zeta routines keep internal caches; serialize access so the
// rest of the library can stay freely multithreaded.
std::mutex g_mpfr_shared_mx;

void set_radius_one_ulp(Real& r, int tern) {
    if (tern == 0 || r.mid_is_zero()) return;
    r.add_error_2exp(static_cast<long>(mpfr_get_exp(r.mid())) - static_cast<long>(r.precision()));
}

}  // namespace

BigInteger factorial(unsigned long n) {
    BigInteger z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return z;
}

BigInteger lcm_power(unsigned long k, unsigned long n) {
    BigInteger l(1);
    for (unsigned long i = 2; i <= k + 1; ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
    BigInteger out;
    mpz_pow_ui(out.get_mpz_t(), l.get_mpz_t(), n + 1);
    return out;
}

RationalCoeff bernoulli(unsigned long m) {
    static std::mutex mx;
    static std::vector<RationalCoeff> cache{RationalCoeff(1)};  // B_0 = 1
    std::lock_guard<std::mutex> lock(mx);
    while (cache.size() <= m) {
        unsigned long j = cache.size();
        // sum_{k=0}^{j} C(j+1,k) B_k = 0  =>  B_j = -(1/(j+1)) sum_{k<j} C(j+1,k) B_k
        RationalCoeff acc(0);
        for (unsigned long k = 0; k < j; ++k) {
            BigInteger binom;
            mpz_bin_uiui(binom.get_mpz_t(), j + 1, k);
            acc += RationalCoeff(binom) * cache[k];
        }
        acc /= RationalCoeff(static_cast<long>(j) + 1);
        cache.push_back(-acc);
    }
    return cache[m];
}

Real pi_ball(const PrecisionContext& ctx) {
    std::lock_guard<std::mutex> lock(g_mpfr_shared_mx);
    Real r(ctx.working_bits);
    int t = mpfr_const_pi(r.mid_raw(), MPFR_RNDN);
    set_radius_one_ulp(r, t ? t : 1);
    return r;
}

Real e_ball(const PrecisionContext& ctx) {
    return exp_ball(Real::exact_ui(1, ctx.working_bits));
}

Real euler_gamma(const PrecisionContext& ctx) {
    std::lock_guard<std::mutex> lock(g_mpfr_shared_mx);
    Real r(ctx.working_bits);
    int t = mpfr_const_euler(r.mid_raw(), MPFR_RNDN);
    set_radius_one_ulp(r, t ? t : 1);
    return r;
}

Real zeta_int(unsigned long j, const PrecisionContext& ctx) {
    if (j < 2) throw std::domain_error("zeta_int: argument must be >= 2");
    std::lock_guard<std::mutex> lock(g_mpfr_shared_mx);
    Real r(ctx.working_bits);
    int t = mpfr_zeta_ui(r.mid_raw(), j, MPFR_RNDN);
    set_radius_one_ulp(r, t ? t : 1);
    return r;
}

Real chebyshev_psi(unsigned long m, const PrecisionContext& ctx) {
    if (m < 1) throw std::domain_error("chebyshev_psi: m must be >= 1");
    BigInteger l(1);
    for (unsigned long i = 2; i <= m; ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
    // Carry the integer exactly so the only width comes from the logarithm.
    mpfr_prec_t p = std::max<mpfr_prec_t>(ctx.working_bits,
                                          mpz_sizeinbase(l.get_mpz_t(), 2) + 8);
    return log_ball(Real::from_integer(l, p));
}

Real lambert_w(const Real& x, const PrecisionContext& ctx) {
    if (x.lower_exact() < 0)
        throw std::domain_error("lambert_w: ball reaches below zero");
    if (x.mid_is_zero() && x.is_exact()) return Real::exact_ui(0, ctx.working_bits);

    const mpfr_prec_t wb = ctx.working_bits;
    const mpfr_prec_t work = wb + 64;

    // Newton iteration on the midpoint: w <- w - (w e^w - x)/(e^w (w+1)).
    mpfr_t w, ew, t, dw, xm;
    mpfr_init2(w, work);
    mpfr_init2(ew, work);
    mpfr_init2(t, work);
    mpfr_init2(dw, work);
    mpfr_init2(xm, work);
    mpfr_set(xm, x.mid(), MPFR_RNDN);

    double xd = mpfr_get_d(xm, MPFR_RNDN);
    double w0 = xd < 3.0 ? std::log1p(xd) : std::log(xd) - std::log(std::log(xd));
    mpfr_set_d(w, w0 > 0 ? w0 : xd, MPFR_RNDN);

    for (int it = 0; it < 200; ++it) {
        mpfr_exp(ew, w, MPFR_RNDN);
        mpfr_mul(t, w, ew, MPFR_RNDN);
        mpfr_sub(t, t, xm, MPFR_RNDN);            // residual
        mpfr_add_ui(dw, w, 1, MPFR_RNDN);
        mpfr_mul(dw, dw, ew, MPFR_RNDN);          // derivative
        mpfr_div(dw, t, dw, MPFR_RNDN);           // step
        mpfr_sub(w, w, dw, MPFR_RNDN);
        if (mpfr_zero_p(dw)) break;
        if (!mpfr_zero_p(w) &&
            mpfr_get_exp(dw) < mpfr_get_exp(w) - static_cast<mpfr_exp_t>(wb) - 16)
            break;
    }

    // Monotone certification: widen h until (w-h)e^(w-h) < min(x) and
    // (w+h)e^(w+h) > max(x); w e^w is strictly increasing on w > -1, so the
    // bracket then contains W of every point of the input ball.
    long he = (mpfr_zero_p(w) ? 0 : static_cast<long>(mpfr_get_exp(w))) -
              static_cast<long>(wb) - 4;
    Real result(wb);
    bool ok = false;
    for (int attempt = 0; attempt < 80 && !ok; ++attempt, he += 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, work);
        mpfr_init2(hi, work);
        mpfr_set_ui_2exp(t, 1, he, MPFR_RNDU);
        mpfr_sub(lo, w, t, MPFR_RNDD);
        mpfr_add(hi, w, t, MPFR_RNDU);

        Real blo(work), bhi(work);
        mpfr_set(blo.mid_raw(), lo, MPFR_RNDN);
        mpfr_set(bhi.mid_raw(), hi, MPFR_RNDN);
        Real flo = mul(blo, exp_ball(blo));
        Real fhi = mul(bhi, exp_ball(bhi));
        if (flo.upper_exact() < x.lower_exact() && fhi.lower_exact() > x.upper_exact()) {
            int tm = mpfr_set(result.mid_raw(), w, MPFR_RNDN);
            mpfr_t r1, r2;
            mpfr_init2(r1, Real::radius_prec);
            mpfr_init2(r2, Real::radius_prec);
            mpfr_sub(r1, result.mid(), lo, MPFR_RNDU);
            mpfr_sub(r2, hi, result.mid(), MPFR_RNDU);
            if (mpfr_cmp(r1, r2) < 0) mpfr_swap(r1, r2);
            mpfr_add(result.rad_raw(), result.rad_raw(), r1, MPFR_RNDU);
            set_radius_one_ulp(result, tm ? tm : 1);
            mpfr_clear(r1);
            mpfr_clear(r2);
            ok = true;
        }
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    mpfr_clear(w);
    mpfr_clear(ew);
    mpfr_clear(t);
    mpfr_clear(dw);
    mpfr_clear(xm);
    if (!ok) throw std::runtime_error("lambert_w: certification did not converge");
    return result;
}

Real ei(const Real& x, const PrecisionContext& ctx) {
    if (x.contains_zero()) throw std::domain_error("ei: ball contains zero");
    RationalCoeff hi_mag = abs(x.upper_exact()) > abs(x.lower_exact()) ? abs(x.upper_exact())
                                                                       : abs(x.lower_exact());
    if (hi_mag > 2) throw std::domain_error("ei: |x| > 2 is outside the supported range");

    PrecisionContext inner{ctx.target_digits, ctx.working_bits + 32};
    const mpfr_prec_t p = inner.working_bits;

    Real xb(x);
    Real sum = add(euler_gamma(inner), log_ball(abs_ball(xb)));

    // sum_{k>=1} x^k/(k*k!): p_k = x^k/k!, term_k = p_k/k.
    Real pk(xb);
    unsigned long k = 1;
    const long cutoff = -static_cast<long>(p) - 16;
    while (true) {
        sum = add(sum, div_ui(pk, k));
        ++k;
        pk = div_ui(mul(pk, xb), k);
        if (k >= 8 && pk.mag_exponent() < cutoff) break;
        if (k > 100000) throw std::runtime_error("ei: series failed to converge");
    }
    // Remaining tail: |term_{k}| <= |p_k|/k and the term ratio |x|*j/(j+1)^2 is
    // below 1/2 from j >= 2|x|, which k >= 8 >= 2*2 guarantees; a factor-2
    // geometric majorant therefore covers everything dropped.
    mpfr_t tb;
    mpfr_init2(tb, Real::radius_prec);
    pk.mag_upper(tb);
    mpfr_div_ui(tb, tb, k, MPFR_RNDU);
    mpfr_mul_2ui(tb, tb, 1, MPFR_RNDU);
    Real tail(Real::radius_prec);
    mpfr_set(tail.mid_raw(), tb, MPFR_RNDU);
    sum.add_error(tail);
    mpfr_clear(tb);
    return sum;
}

}  // namespace gconst::specfun
