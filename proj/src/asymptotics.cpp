#include "gconst/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "gconst/constants.hpp"
#include "gconst/specfun.hpp"

namespace gconst::asymptotics {

Bracket eta_bracket(unsigned n, const PrecisionContext& ctx) {
    if (n < 1) throw std::domain_error("eta_bracket: defined for n >= 1");
    // Endpoints sit at factorial scale but must resolve a gap 3^-n below it,
    // so the target digits are paid at gap scale: 0.4772 extra digits per
    // order covers the 3^-n factor (the factorial itself is carried exactly).
    PrecisionContext c = ctx.boosted(static_cast<int>(0.4772 * n) + 4);
    const mpfr_prec_t p = c.working_bits;
    Real nfact = Real::from_integer(specfun::factorial(n), p);

    // center = n! (1 - 2^-(n+1)), an exact rational.
    BigInteger two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n + 1);
    RationalCoeff center_q(two_pow - 1, two_pow);
    center_q.canonicalize();
    Real center = mul_rational(nfact, center_q);

    // remainder = n! (e - 5/2) 3^-n.
    Real e = specfun::e_ball(c);
    Real gap = sub(e, Real::from_rational(RationalCoeff(5, 2), p));
    BigInteger three_pow;
    mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, n);
    Real rem = div(mul(nfact, gap), Real::from_integer(three_pow, p));

    return Bracket{sub(center, rem), add(center, rem)};
}

Bracket gamma_bracket(unsigned n, const PrecisionContext& ctx) {
    if (n < 1) throw std::domain_error("gamma_bracket: defined for n >= 1");
    Bracket eta = eta_bracket(n, ctx);
    Real delta_over_e = div(constants::delta_value(n, ctx, constants::DeltaRoute::Quadrature),
                            specfun::e_ball(ctx));
    // gamma = eta - delta/e, so both endpoints shift by the same certified ball.
    return Bracket{sub(eta.low, delta_over_e), sub(eta.high, delta_over_e)};
}

Real laplace_delta_estimate(unsigned n, const PrecisionContext& ctx) {
    if (n < 3) throw std::domain_error("laplace_delta_estimate: defined for n >= 3");
    const mpfr_prec_t p = ctx.working_bits;
    Real nb = Real::exact_ui(n, p);
    Real w = specfun::lambert_w(nb, ctx);
    Real e = specfun::e_ball(ctx);
    Real two_pi_n = mul_2exp(mul(specfun::pi_ball(ctx), nb), 1);
    Real root = sqrt_ball(div(two_pi_n, add(w, Real::exact_ui(1, p))));
    Real body = mul(pow_int(w, static_cast<long>(n)), exp_ball(neg(div(nb, w))));
    return mul(mul(e, body), root);
}

bool strongly_inside(const Real& value, const Bracket& b) {
    return b.low.certainly_less(value) && value.certainly_less(b.high);
}

std::vector<AsymptoticRow> asymptotic_report(const std::vector<unsigned>& ns,
                                             const PrecisionContext& ctx) {
    std::vector<AsymptoticRow> rows;
    rows.reserve(ns.size());
    for (unsigned n : ns) {
        AsymptoticRow row;
        row.n = n;
        row.eta = constants::eta_value(n, ctx);
        row.delta = constants::delta_value(n, ctx, constants::DeltaRoute::Quadrature);
        row.gamma = sub(row.eta, div(row.delta, specfun::e_ball(ctx)));
        if (n >= 1) {
            row.eta_bounds = eta_bracket(n, ctx);
            row.gamma_bounds = gamma_bracket(n, ctx);
            row.eta_inside = strongly_inside(row.eta, row.eta_bounds);
            row.gamma_inside = strongly_inside(row.gamma, row.gamma_bounds);
        }
        if (n >= 3) {
            row.laplace = laplace_delta_estimate(n, ctx);
            double est = row.laplace.mid_double();
            double act = std::fabs(row.delta.mid_double());
            row.laplace_rel_err = std::fabs(est / act - 1.0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace gconst::asymptotics
