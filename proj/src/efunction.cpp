#include "gconst/efunction.hpp"

#include <stdexcept>

#include "gconst/specfun.hpp"

namespace gconst::efun {

RationalCoeff coeff_a(unsigned n, unsigned long k) {
    BigInteger den;
    mpz_ui_pow_ui(den.get_mpz_t(), k + 1, n + 1);
    RationalCoeff a(specfun::factorial(n), den);
    a.canonicalize();
    if (k % 2 == 1) a = -a;
    return a;
}

struct EFunctionSeries::Chunk {
    RationalCoeff a[chunk_len];
};

EFunctionSeries::~EFunctionSeries() {
    for (auto& slot : chunks_) delete slot.load(std::memory_order_relaxed);
}

const EFunctionSeries::Chunk* EFunctionSeries::chunk_at(unsigned long ci) const {
    const Chunk* c = chunks_[ci].load(std::memory_order_acquire);
    if (c) return c;
    std::lock_guard<std::mutex> lock(grow_mx_);
    c = chunks_[ci].load(std::memory_order_relaxed);
    if (!c) {
        auto* fresh = new Chunk;
        for (unsigned long i = 0; i < chunk_len; ++i)
            fresh->a[i] = coeff_a(n_, ci * chunk_len + i);
        chunks_[ci].store(fresh, std::memory_order_release);
        c = fresh;
    }
    return c;
}

RationalCoeff EFunctionSeries::series_coeff(unsigned long k) const {
    if (k >= storage_cap) return coeff_a(n_, k);
    return chunk_at(k / chunk_len)->a[k % chunk_len];
}

RationalCoeff EFunctionSeries::taylor_coeff(unsigned long k) const {
    return series_coeff(k) / RationalCoeff(specfun::factorial(k));
}

void EFunctionSeries::ensure(unsigned long k_max) const {
    unsigned long top = std::min(k_max, storage_cap - 1);
    for (unsigned long ci = 0; ci <= top / chunk_len; ++ci) chunk_at(ci);
}

namespace {

// Smallest summation length that makes the factor-2 geometric tail majorant
// valid: the term ratio is bounded by |t|/(k+1), so the loop must not stop
// before k + 1 >= 2|t|.
unsigned long min_terms_for(const Real& t) {
    const double m = std::fabs(t.mid_double()) + t.rad_double();
    if (!std::isfinite(m) || m > 90000.0)
        throw std::domain_error("eval_F: |t| too large for series evaluation");
    return std::max<unsigned long>(10, static_cast<unsigned long>(2.0 * m) + 2);
}

// Shared summation core.  term_ratio(k) must return the exact rational r_k with
// term_k = term_{k-1} * t * r_k, and |r_k| <= 1/k so that |t|/(k+1) bounds the
// term ratio and a factor-2 geometric majorant certifies the dropped tail once
// k + 1 >= 2|t| (enforced through min_terms_for).
template <typename RatioFn>
Real sum_series(const Real& term0, const Real& t, const PrecisionContext& ctx, RatioFn term_ratio) {
    const mpfr_prec_t p = ctx.working_bits + 32;
    Real tb(t);
    Real term = add(term0, Real::exact_ui(0, p));  // promote to working precision
    Real sum = term;
    long peak_e = term.mag_exponent();
    const long drop = static_cast<long>(p) + 16;
    const unsigned long k_min = min_terms_for(t);
    unsigned long k = 0;
    while (true) {
        ++k;
        term = mul_rational(mul(term, tb), term_ratio(k));
        sum = add(sum, term);
        long te = term.mag_exponent();
        if (te > peak_e) peak_e = te;
        if (k >= k_min && te < peak_e - drop) break;
        if (k > 400000) throw std::runtime_error("eval_F: series failed to converge");
    }
    // Tail: |term_{k+1}| <= |term_k| * |t| / (k+1), ratio < 1/2 beyond here.
    mpfr_t tbound, tmag;
    mpfr_init2(tbound, Real::radius_prec);
    mpfr_init2(tmag, Real::radius_prec);
    term.mag_upper(tbound);
    tb.mag_upper(tmag);
    mpfr_mul(tbound, tbound, tmag, MPFR_RNDU);
    mpfr_div_ui(tbound, tbound, k + 1, MPFR_RNDU);
    mpfr_mul_2ui(tbound, tbound, 1, MPFR_RNDU);
    Real tail(Real::radius_prec);
    mpfr_set(tail.mid_raw(), tbound, MPFR_RNDU);
    sum.add_error(tail);
    mpfr_clear(tbound);
    mpfr_clear(tmag);
    return sum;
}

}  // namespace

Real eval_F(unsigned n, const Real& t, const PrecisionContext& ctx) {
    Real term0 = Real::from_integer(specfun::factorial(n), ctx.working_bits + 32);
    return sum_series(term0, t, ctx, [n](unsigned long k) -> RationalCoeff {
        // a_k / a_{k-1} / k = -(k/(k+1))^(n+1) / k = -k^n / (k+1)^(n+1)
        BigInteger num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), k, n);
        mpz_ui_pow_ui(den.get_mpz_t(), k + 1, n + 1);
        RationalCoeff q(num, den);
        q.canonicalize();
        return RationalCoeff(-q);
    });
}

Real eval_F_derivative(unsigned n, const Real& t, const PrecisionContext& ctx) {
    // F_n'(t) = sum_{j>=0} a_{j+1} t^j / j!, so term_0 = a_1 = -n!/2^(n+1) and
    // term_j / term_{j-1} = t * (a_{j+1}/a_j) / j.
    Real term0 = Real::from_rational(coeff_a(n, 1), ctx.working_bits + 32);
    return sum_series(term0, t, ctx, [n](unsigned long j) -> RationalCoeff {
        BigInteger num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), j + 1, n + 1);
        mpz_ui_pow_ui(den.get_mpz_t(), j + 2, n + 1);
        RationalCoeff q(num, den * BigInteger(j));
        q.canonicalize();
        return RationalCoeff(-q);
    });
}

std::vector<RationalCoeff> apply_dtilde(const std::vector<RationalCoeff>& c) {
    std::vector<RationalCoeff> out(c.size());
    for (size_t k = 0; k < c.size(); ++k)
        out[k] = c[k] * RationalCoeff(static_cast<unsigned long>(k) + 1);
    return out;
}

std::vector<RationalCoeff> apply_d(const std::vector<RationalCoeff>& c) {
    if (c.empty()) return {};
    std::vector<RationalCoeff> out(c.size() - 1);
    for (size_t k = 0; k + 1 < c.size(); ++k)
        out[k] = RationalCoeff(static_cast<unsigned long>(k) + 1) * c[k + 1] + c[k];
    return out;
}

std::vector<RationalCoeff> taylor_prefix(unsigned n, unsigned long K) {
    std::vector<RationalCoeff> c(K + 1);
    BigInteger kfact(1);
    BigInteger nfact = specfun::factorial(n);
    for (unsigned long k = 0; k <= K; ++k) {
        if (k > 0) kfact *= k;
        BigInteger den;
        mpz_ui_pow_ui(den.get_mpz_t(), k + 1, n + 1);
        RationalCoeff q(nfact, den * kfact);
        q.canonicalize();
        c[k] = (k % 2 == 0) ? q : -q;
    }
    return c;
}

std::vector<RationalCoeff> exp_neg_prefix(unsigned long K) {
    std::vector<RationalCoeff> c(K + 1);
    BigInteger kfact(1);
    for (unsigned long k = 0; k <= K; ++k) {
        if (k > 0) kfact *= k;
        RationalCoeff q(1, kfact);
        q.canonicalize();
        c[k] = (k % 2 == 0) ? q : -q;
    }
    return c;
}

std::optional<long> check_derivative_recurrence(const std::vector<RationalCoeff>& c_n,
                                                const std::vector<RationalCoeff>& c_nm1,
                                                unsigned n) {
    size_t K = std::min(c_n.size(), c_nm1.size());
    for (size_t k = 0; k < K; ++k) {
        // In Taylor form the coefficient recurrence (k+1) a_k^(n) = n a_k^(n-1)
        // reads (k+1) c_k^(n) = n c_k^(n-1).
        if (RationalCoeff(static_cast<unsigned long>(k) + 1) * c_n[k] !=
            RationalCoeff(n) * c_nm1[k])
            return static_cast<long>(k);
    }
    return std::nullopt;
}

std::optional<long> check_dtilde_power(const std::vector<RationalCoeff>& c_n, unsigned n) {
    std::vector<RationalCoeff> cur = c_n;
    for (unsigned i = 0; i <= n; ++i) cur = apply_dtilde(cur);
    RationalCoeff nfact(specfun::factorial(n));
    std::vector<RationalCoeff> expc = exp_neg_prefix(cur.empty() ? 0 : cur.size() - 1);
    for (size_t k = 0; k < cur.size(); ++k)
        if (cur[k] != nfact * expc[k]) return static_cast<long>(k);
    return std::nullopt;
}

std::optional<long> check_annihilator(const std::vector<RationalCoeff>& c_n, unsigned n) {
    std::vector<RationalCoeff> cur = c_n;
    for (unsigned i = 0; i <= n; ++i) cur = apply_dtilde(cur);
    cur = apply_d(cur);
    for (size_t k = 0; k < cur.size(); ++k)
        if (cur[k] != 0) return static_cast<long>(k);
    return std::nullopt;
}

std::optional<long> check_order_zero_closure(const std::vector<RationalCoeff>& c_0) {
    // 1 - t F_0: coefficient 0 is 1 - 0, coefficient k >= 1 is -c0_{k-1}.
    std::vector<RationalCoeff> expc = exp_neg_prefix(c_0.size());
    if (RationalCoeff(1) != expc[0]) return 0L;
    for (size_t k = 1; k <= c_0.size(); ++k)
        if (-c_0[k - 1] != expc[k]) return static_cast<long>(k);
    return std::nullopt;
}

IdentityReport verify_ode_identities(unsigned n, unsigned long K) {
    IdentityReport rep;
    rep.n = n;
    rep.K = K;
    auto add_check = [&rep](const char* name, std::optional<long> bad) {
        IdentityCheck c;
        c.name = name;
        if (bad) {
            c.pass = false;
            c.first_bad_k = *bad;
            rep.pass = false;
        }
        rep.checks.push_back(std::move(c));
    };

    std::vector<RationalCoeff> c_n = taylor_prefix(n, K);
    if (n >= 1) {
        std::vector<RationalCoeff> c_nm1 = taylor_prefix(n - 1, K);
        add_check("derivative-recurrence", check_derivative_recurrence(c_n, c_nm1, n));
    }
    add_check("dtilde-power", check_dtilde_power(c_n, n));
    add_check("annihilator", check_annihilator(c_n, n));
    add_check("order-zero-closure", check_order_zero_closure(n == 0 ? c_n : taylor_prefix(0, K)));
    return rep;
}

DenominatorReport denominator_check(unsigned n, unsigned long K,
                                    const std::vector<unsigned long>& growth_samples,
                                    const PrecisionContext& ctx) {
    DenominatorReport rep;
    rep.n = n;
    rep.K = K;

    // Denominator of a_j in lowest terms, for j = 0..K.
    std::vector<BigInteger> dens(K + 1);
    for (unsigned long j = 0; j <= K; ++j) dens[j] = coeff_a(n, j).get_den();

    // g_k = lcm(1..k+1)^(n+1), built incrementally.
    BigInteger lcm_base(1);
    for (unsigned long k = 0; k <= K && rep.divisibility_pass; ++k) {
        mpz_lcm_ui(lcm_base.get_mpz_t(), lcm_base.get_mpz_t(), k + 1);
        BigInteger g_k;
        mpz_pow_ui(g_k.get_mpz_t(), lcm_base.get_mpz_t(), n + 1);
        for (unsigned long j = 0; j <= k; ++j) {
            if (!mpz_divisible_p(g_k.get_mpz_t(), dens[j].get_mpz_t())) {
                rep.divisibility_pass = false;
                rep.first_bad_j = static_cast<long>(j);
                rep.first_bad_k = static_cast<long>(k);
                break;
            }
        }
    }

    for (unsigned long k : growth_samples) {
        DenominatorGrowthRow row;
        row.k = k;
        // ln g_k = (n+1) * ln lcm(1..k+1)
        row.ln_g_k = mul_si(specfun::chebyshev_psi(k + 1, ctx), static_cast<long>(n) + 1);
        row.linear_term = static_cast<double>(n + 1) * static_cast<double>(k + 1);
        rep.growth.push_back(std::move(row));
    }
    return rep;
}

}  // namespace gconst::efun
