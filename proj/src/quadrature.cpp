#include "gconst/quadrature.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>

#include "gconst/specfun.hpp"

namespace gconst::quadrature {

namespace {

// Unary mpfr function applied to an exact (radius-0) ball.
Real exact_unary(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Real& a, mpfr_prec_t p) {
    Real r(p);
    int t = f(r.mid_raw(), a.mid(), MPFR_RNDN);
    if (t != 0 && !mpfr_zero_p(r.mid()))
        r.add_error_2exp(static_cast<long>(mpfr_get_exp(r.mid())) - static_cast<long>(p));
    return r;
}

struct NodeSetup {
    mpfr_prec_t p;
    Real pi;
    Real one;
    Real scale;  // U - 1 for the [1, U] shape; unused otherwise
    unsigned n;
    bool upper_shape;
};

// One tanh-sinh node term g(t) at the exact dyadic abscissa t = j * 2^(-m):
//   s = (pi/2) sinh t,  E = e^(-2s),  u_hat = 1/(1+E),  1-u_hat = E*u_hat,
//   weight = pi cosh(t) u_hat (1-u_hat)   [times (U-1) on [1, U]].
Real node_term(const NodeSetup& ns, long j, int m) {
    Real t = Real::dyadic(j, -m, ns.p);
    Real sh = exact_unary(mpfr_sinh, t, ns.p);
    Real ch = exact_unary(mpfr_cosh, t, ns.p);
    Real s = mul(mul_2exp(ns.pi, -1), sh);
    Real E = exp_ball(mul_2exp(neg(s), 1));
    Real uh = div(ns.one, add(ns.one, E));
    Real one_minus_uh = mul(E, uh);
    Real weight = mul(mul(ns.pi, ch), mul(uh, one_minus_uh));

    if (!ns.upper_shape) {
        // (-ln u)^n e^(-u) on (0,1), u = u_hat; -ln u = log1p(E).
        Real integrand = exp_ball(neg(uh));
        if (ns.n > 0) integrand = mul(integrand, pow_int(log1p_ball(E), static_cast<long>(ns.n)));
        return mul(integrand, weight);
    }
    // (ln u)^n e^(-u) on [1, U], u = 1 + (U-1) u_hat; ln u = log1p((U-1) u_hat).
    Real v = mul(ns.scale, uh);
    Real u = add(ns.one, v);
    Real integrand = exp_ball(neg(u));
    if (ns.n > 0) integrand = mul(integrand, pow_int(log1p_ball(v), static_cast<long>(ns.n)));
    return mul(mul(integrand, weight), ns.scale);
}

// Level-doubling tanh-sinh driver.  Reuses all previous nodes: the raw grid
// sum R_m over spacing 2^(-m) equals R_{m-1} plus the odd-index nodes, and
// S_m = 2^(-m) R_m.  Convergence is declared when consecutive level sums agree
// to the bit target; 4x the final difference is folded into the radius.
QuadratureResult run_tanh_sinh(const NodeSetup& ns, long target_bits) {
    constexpr int level_first = 3;
    constexpr int level_last = 16;
    const long hard_cap_t = 12;  // |t| beyond this is ~1e-111000 territory

    Real R(ns.p);
    Real S(ns.p), S_prev(ns.p), last_diff(ns.p);
    long scale_e = LONG_MIN;
    unsigned long nodes = 0;
    bool have_prev = false;
    // Farthest abscissa each direction has visited, in units of 2^(-level_last).
    // The integrand is not monotone away from t = 0 (the [1, U] shape puts its
    // peak near t ~ -1 behind a deep valley), so a negligible-run break is only
    // trusted beyond the fringe the previous level actually walked to.
    long reach[2] = {0, 0};

    for (int m = level_first; m <= level_last; ++m) {
        Real newsum(ns.p);
        long step = (m == level_first) ? 1 : 2;
        if (m == level_first) {
            newsum = node_term(ns, 0, m);
            ++nodes;
        }
        for (int dir : {+1, -1}) {
            const int di = dir > 0 ? 0 : 1;
            const long reach_prev = reach[di];
            int below = 0;
            for (long j = 1;; j += step) {
                Real g = node_term(ns, dir * j, m);
                ++nodes;
                newsum = add(newsum, g);
                long ge = g.mag_exponent();
                long ref = std::max(scale_e + m, newsum.mag_exponent());
                const long tq = j << (level_last - m);
                if (tq >= reach_prev && ge < ref - (target_bits + 12)) {
                    if (++below >= 3) {
                        reach[di] = std::max(reach_prev, tq);
                        break;
                    }
                } else {
                    below = 0;
                }
                if (j >= (hard_cap_t << m)) {
                    reach[di] = std::max(reach_prev, tq);
                    break;
                }
            }
        }
        R = add(R, newsum);
        S = mul_2exp(R, -m);
        scale_e = std::max(scale_e, S.mag_exponent());
        if (have_prev) {
            last_diff = sub(S, S_prev);
            bool diff_small = last_diff.mag_exponent() <= S.mag_exponent() - target_bits;
            if (diff_small) {
                Real out = S;
                out.add_error(mul_2exp(abs_ball(last_diff), 2));
                QuadratureResult qr;
                qr.value = out;
                qr.nodes = nodes;
                qr.levels = m - level_first + 1;
                return qr;
            }
        }
        S_prev = S;
        have_prev = true;
    }

    QuadratureResult best;
    best.value = S;
    best.value.add_error(mul_2exp(abs_ball(last_diff), 2));
    best.nodes = nodes;
    best.levels = level_last - level_first + 1;
    throw BudgetExceeded(std::move(best));
}

double choose_cut(unsigned n, int digits) {
    double tail_target = 2.0 * std::log(10.0) * (digits + 5) + 2.0 * std::log(2.0);
    double u = std::max({std::exp(2.0) + 1.0, static_cast<double>(n) * n, tail_target});
    return std::ceil(u);
}

}  // namespace

Real tail_bound(const IntegralSpec& spec, double U, const PrecisionContext& ctx) {
    if (spec.kind == IntegralKind::LowerMoment) return Real::exact_ui(0, ctx.working_bits);
    double threshold = std::max(std::exp(2.0), static_cast<double>(spec.n) * spec.n);
    if (U < threshold)
        throw std::domain_error("tail_bound: U below max(e^2, n^2), the majorant is not valid there");
    // 2 e^(-U/2); U is an integer by construction, carried exactly.
    Real u = Real::exact_si(static_cast<long>(U), ctx.working_bits);
    return mul_2exp(exp_ball(mul_2exp(neg(u), -1)), 1);
}

QuadratureResult integrate(const IntegralSpec& spec, const PrecisionContext& ctx) {
    const long target_bits =
        static_cast<long>(std::ceil(ctx.target_digits * 3.3219280948873626)) + 8;
    const mpfr_prec_t p = static_cast<mpfr_prec_t>(target_bits) + 96;
    PrecisionContext node_ctx{ctx.target_digits, p};

    NodeSetup ns{p, specfun::pi_ball(node_ctx), Real::exact_ui(1, p), Real::exact_ui(1, p),
                 spec.n, false};

    if (spec.kind == IntegralKind::LowerMoment) {
        QuadratureResult qr = run_tanh_sinh(ns, target_bits);
        qr.tail = Real::exact_ui(0, ctx.working_bits);
        return qr;
    }

    const double U = choose_cut(spec.n, ctx.target_digits);
    NodeSetup ns_up = ns;
    ns_up.upper_shape = true;
    ns_up.scale = Real::exact_si(static_cast<long>(U) - 1, p);

    QuadratureResult up = run_tanh_sinh(ns_up, target_bits);
    Real tb = tail_bound(spec, U, node_ctx);
    up.value.add_error(tb);  // covers the dropped [U, oo) mass (and is >= it)
    up.tail = tb;
    up.cut_upper = U;

    if (spec.kind == IntegralKind::UpperMoment) return up;

    // FullMoment = Lower + (-1)^n Upper
    QuadratureResult low = run_tanh_sinh(ns, target_bits);
    QuadratureResult full;
    full.value = (spec.n % 2 == 0) ? add(low.value, up.value) : sub(low.value, up.value);
    full.nodes = low.nodes + up.nodes;
    full.levels = std::max(low.levels, up.levels);
    full.cut_upper = U;
    full.tail = up.tail;
    return full;
}

}  // namespace gconst::quadrature
