#include "gconst/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gconst/efunction.hpp"
#include "gconst/quadrature.hpp"
#include "gconst/specfun.hpp"

namespace gconst::constants {

namespace {

Real default_zeta(unsigned long j, const PrecisionContext& ctx) {
    return specfun::zeta_int(j, ctx);
}

Real call_zeta(const ZetaProvider& z, unsigned long j, const PrecisionContext& ctx) {
    return z ? z(j, ctx) : default_zeta(j, ctx);
}

}  // namespace

int magnitude_digits(unsigned n) {
    if (n < 2) return 1;
    double lg = 0.0;
    for (unsigned k = 2; k <= n; ++k) lg += std::log10(static_cast<double>(k));
    return static_cast<int>(lg) + 1;
}

Real eta_value(unsigned n, const PrecisionContext& ctx) {
    const mpfr_prec_t p = ctx.working_bits + 32;
    BigInteger nfact = specfun::factorial(n);
    Real sum(p);
    BigInteger kfact(1);
    const long drop = static_cast<long>(p) + 8;
    long scale_e = Real::from_integer(nfact, 64).mag_exponent();
    unsigned long k = 0;
    Real term(p);
    while (true) {
        ++k;
        kfact *= k;
        BigInteger kn;
        mpz_ui_pow_ui(kn.get_mpz_t(), k, n);
        term = div(Real::from_integer(nfact, p), Real::from_integer(kn * kfact, p));
        sum = (k % 2 == 1) ? add(sum, term) : sub(sum, term);
        if (term.mag_exponent() < scale_e - drop) break;
        if (k > 100000) throw std::runtime_error("eta_value: series failed to converge");
    }
    // Alternating with |term_{k+1}| < |term_k| from k = 1 on, so the dropped
    // tail is bounded by the first dropped term, itself below |term_k|.
    sum.add_error(abs_ball(term));
    return sum;
}

Real eta_quadrature(unsigned n, const PrecisionContext& ctx) {
    PrecisionContext q{ctx.target_digits + magnitude_digits(n), ctx.working_bits};
    return quadrature::integrate(quadrature::IntegralSpec::lower(n), q).value;
}

std::vector<Real> cumulants(unsigned j_max, const PrecisionContext& ctx,
                            const ZetaProvider& zeta) {
    std::vector<Real> out;
    out.reserve(j_max + 1);
    out.push_back(Real::exact_ui(0, ctx.working_bits));  // kappa_0 placeholder
    if (j_max >= 1) out.push_back(specfun::euler_gamma(ctx));
    for (unsigned j = 2; j <= j_max; ++j)
        out.push_back(mul(Real::from_integer(specfun::factorial(j - 1), ctx.working_bits),
                          call_zeta(zeta, j, ctx)));
    return out;
}

std::vector<Real> gamma_recurrence(unsigned n_max, const PrecisionContext& ctx,
                                   const ZetaProvider& zeta) {
    // Radii compound roughly linearly with each convolution step, so carry the
    // whole recurrence with a factorial-magnitude boost over the caller's bits.
    PrecisionContext inner =
        PrecisionContext::for_digits(ctx.target_digits + magnitude_digits(n_max) + 8);
    inner.working_bits = std::max(inner.working_bits, ctx.working_bits);
    const mpfr_prec_t p = inner.working_bits;

    std::vector<Real> g;
    g.reserve(n_max + 1);
    g.push_back(Real::exact_ui(1, p));
    if (n_max >= 1) g.push_back(specfun::euler_gamma(inner));

    std::vector<Real> zt(n_max + 1, Real(p));  // zt[j] = zeta(j), j >= 2
    for (unsigned j = 2; j <= n_max; ++j) zt[j] = call_zeta(zeta, j, inner);

    for (unsigned n = 1; n < n_max; ++n) {
        // gamma^(n+1) = gamma gamma^(n) + sum_{j=0}^{n-1} (n!/j!) zeta(n+1-j) gamma^(j)
        Real acc = mul(g[1], g[n]);
        BigInteger ratio = specfun::factorial(n);  // n!/j! walked down from j = 0
        BigInteger jfact(1);
        for (unsigned j = 0; j + 1 <= n; ++j) {
            if (j > 0) {
                jfact *= j;
                ratio = specfun::factorial(n) / jfact;
            }
            acc = add(acc, mul(Real::from_integer(ratio, p), mul(zt[n + 1 - j], g[j])));
        }
        g.push_back(acc);
    }
    return g;
}

Real delta_value(unsigned n, const PrecisionContext& ctx, DeltaRoute route) {
    if (route == DeltaRoute::Identity) {
        Real eta = eta_value(n, ctx);
        Real gam = gamma_recurrence(n, ctx)[n];
        return mul(specfun::e_ball(ctx), sub(eta, gam));
    }
    PrecisionContext q{ctx.target_digits + magnitude_digits(n), ctx.working_bits};
    Real upper = quadrature::integrate(quadrature::IntegralSpec::upper(n), q).value;
    Real d = mul(specfun::e_ball(q), upper);
    return (n % 2 == 0) ? neg(d) : d;
}

Real hardy_residual(unsigned n, const PrecisionContext& ctx) {
    // All three route balls need absolute width ~10^-(digits) even though the
    // values are factorial-sized, hence the magnitude boost.
    PrecisionContext inner =
        PrecisionContext::for_digits(ctx.target_digits + magnitude_digits(n) + 8);
    Real eta = eta_value(n, inner);
    Real gam = gamma_recurrence(n, inner)[n];
    Real del = delta_value(n, inner, DeltaRoute::Quadrature);
    return sub(sub(eta, gam), div(del, specfun::e_ball(inner)));
}

Real delta_star(const PrecisionContext& ctx) {
    Real one = Real::exact_ui(1, ctx.working_bits);
    return neg(mul(specfun::e_ball(ctx), specfun::ei(one, ctx)));
}

namespace {

struct RowValues {
    Real eta, gamma, delta, hardy;
    bool exact_row = false;
};

RowValues compute_row(unsigned n, const std::vector<Real>& gamma_seq,
                      const PrecisionContext& row_ctx) {
    RowValues rv;
    rv.eta = eta_value(n, row_ctx);
    if (n == 0) {
        // gamma^(0) = 1 (zeroth moment of a probability density) and
        // delta^(0) = -e Pr{X <= 0} = -1 are exact; the quadrature route
        // re-derives them in cross_validate.
        rv.gamma = Real::exact_ui(1, row_ctx.working_bits);
        rv.delta = neg(Real::exact_ui(1, row_ctx.working_bits));
        rv.exact_row = true;
    } else {
        rv.gamma = n < gamma_seq.size() ? gamma_seq[n] : gamma_recurrence(n, row_ctx)[n];
        rv.delta = delta_value(n, row_ctx, DeltaRoute::Quadrature);
    }
    rv.hardy = sub(sub(rv.eta, rv.gamma), div(rv.delta, specfun::e_ball(row_ctx)));
    return rv;
}

}  // namespace

TableResult table(unsigned n_max, int digits, const PrecisionContext& base) {
    TableResult out;
    out.digits = digits;

    // One shared recurrence pass covers every row at the worst-case boost.
    PrecisionContext seq_ctx = PrecisionContext::for_digits(
        std::max(base.target_digits, digits) + magnitude_digits(n_max) + 10);
    seq_ctx.working_bits = std::max(seq_ctx.working_bits, base.working_bits);
    std::vector<Real> gamma_seq = gamma_recurrence(n_max, seq_ctx);

    for (unsigned n = 0; n <= n_max; ++n) {
        PrecisionContext row_ctx = PrecisionContext::for_digits(
            std::max(base.target_digits, digits) + magnitude_digits(n) + 10);
        row_ctx.working_bits = std::max(row_ctx.working_bits, base.working_bits);

        ConstantRecord rec;
        rec.n = n;
        for (int esc = 0;; ++esc) {
            RowValues rv = compute_row(n, esc == 0 ? gamma_seq : std::vector<Real>{}, row_ctx);
            rec.eta = rv.eta;
            rec.gamma = rv.gamma;
            rec.delta = rv.delta;
            rec.hardy = rv.hardy;
            rec.exact_row = rv.exact_row;
            rec.escalations = esc;
            rec.certified = to_decimal_trunc(rv.eta, digits).certified &&
                            to_decimal_trunc(rv.gamma, digits).certified &&
                            to_decimal_trunc(rv.delta, digits).certified;
            if (rec.certified || esc >= 3) break;
            row_ctx = row_ctx.escalated();
        }

        rec.eta_routes.series = rec.eta;
        rec.gamma_routes.recurrence = rec.gamma;
        rec.delta_routes.quadrature = rec.delta;
        out.escalations = std::max(out.escalations, rec.escalations);
        out.all_certified = out.all_certified && rec.certified;
        out.rows.push_back(std::move(rec));
    }
    return out;
}

CrossValidationReport cross_validate(unsigned n_lo, unsigned n_hi, const PrecisionContext& ctx,
                                     const ZetaProvider& zeta) {
    CrossValidationReport rep;
    PrecisionContext seq_ctx = ctx;
    std::vector<Real> gamma_seq = gamma_recurrence(n_hi, seq_ctx, zeta);
    Real e = specfun::e_ball(PrecisionContext{ctx.target_digits, ctx.working_bits + 64});

    for (unsigned n = n_lo; n <= n_hi; ++n) {
        CrossValidationRow row;
        row.n = n;

        Real eta_s = eta_value(n, ctx);
        Real eta_q = eta_quadrature(n, ctx);
        Real gam_r = gamma_seq[n];
        Real del_q = delta_value(n, ctx, DeltaRoute::Quadrature);
        Real gam_i = sub(eta_s, div(del_q, e));              // identity route for gamma
        Real del_i = mul(e, sub(eta_s, gam_r));              // identity route for delta
        Real hardy = sub(sub(eta_s, gam_r), div(del_q, e));

        row.eta_routes_intersect = eta_s.intersects(eta_q);
        row.gamma_routes_intersect = gam_r.intersects(gam_i);
        row.delta_routes_intersect = del_q.intersects(del_i);
        row.hardy_contains_zero = hardy.contains_zero();
        int want = (n % 2 == 0) ? -1 : 1;  // sign law (-1)^(n+1)
        row.delta_sign_ok = del_q.certain_sign() == want;
        row.hardy_width = 2.0 * hardy.rad_double();

        rep.pass = rep.pass && row.eta_routes_intersect && row.gamma_routes_intersect &&
                   row.delta_routes_intersect && row.hardy_contains_zero && row.delta_sign_ok;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace gconst::constants
