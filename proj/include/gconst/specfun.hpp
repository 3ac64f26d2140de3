#pragma once

#include <vector>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::specfun {

// --- exact integer / rational helpers ---------------------------------------
BigInteger factorial(unsigned long n);
// lcm(1..k+1)^(n+1); the shared denominator that clears the first k+1 series
// coefficients of the order-n E-function.
BigInteger lcm_power(unsigned long k, unsigned long n);
// Exact Bernoulli number B_m (B_1 = -1/2 convention), from the defining
// recurrence sum_{k=0}^{m} C(m+1,k) B_k = 0.  Cached.
RationalCoeff bernoulli(unsigned long m);

// --- certified constants ------------------------------------------------------
Real pi_ball(const PrecisionContext& ctx);
Real e_ball(const PrecisionContext& ctx);
// Euler-Mascheroni constant as a 1-ulp ball.
Real euler_gamma(const PrecisionContext& ctx);
// Riemann zeta at an integer argument >= 2, as a 1-ulp ball.
Real zeta_int(unsigned long j, const PrecisionContext& ctx);

// Chebyshev-psi-like growth function ln(lcm(1..m)), exact argument enclosed as
// a ball.  m >= 1.
Real chebyshev_psi(unsigned long m, const PrecisionContext& ctx);

// --- certified function evaluations -------------------------------------------
// Principal-branch Lambert W for x >= 0 (x = 0 maps to the exact 0 ball).
// Newton refinement of the midpoint followed by a monotone certification: the
// returned ball [w-h, w+h] satisfies (w-h)e^(w-h) < x and (w+h)e^(w+h) > x for
// every point of the input ball.  Throws std::domain_error if the input ball
// reaches below zero.
Real lambert_w(const Real& x, const PrecisionContext& ctx);

// Exponential integral Ei(x) for 0 < |x| <= 2 (ball must exclude zero; larger
// arguments are outside this library's supported range), via the series
// gamma + ln|x| + sum_{k>=1} x^k/(k*k!) with a certified geometric tail bound.
Real ei(const Real& x, const PrecisionContext& ctx);

}  // namespace gconst::specfun
