#pragma once

#include <vector>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::asymptotics {

// A rigorous two-sided bound: the true value lies in [low, high].  Endpoints
// are balls; containment tests use the strong direction (value entirely above
// high(low-ball) and below low(high-ball)) so endpoint rounding can only make
// the test stricter.
struct Bracket {
    Real low, high;
};

// eta^(n) in n! [1 - 2^-(n+1) -+ (e - 5/2) 3^-n] for n >= 1: the remainder of
// the alternating series beyond k = 2 is bounded by 3^-n sum_{k>=3} 1/k!.
Bracket eta_bracket(unsigned n, const PrecisionContext& ctx);

// The eta bracket transported to gamma by subtracting a certified delta/e
// ball endpoint-wise; valid from n = 1.
Bracket gamma_bracket(unsigned n, const PrecisionContext& ctx);

// Saddle-point (Laplace) size estimate for |delta^(n)|, n >= 3:
//   e W(n)^n exp(-n/W(n)) sqrt(2 pi n / (W(n)+1)),
// where u* = n/W(n) solves u ln u = n.
Real laplace_delta_estimate(unsigned n, const PrecisionContext& ctx);

struct AsymptoticRow {
    unsigned n = 0;
    Bracket eta_bounds, gamma_bounds;
    Real eta, gamma, delta;        // certified values
    bool eta_inside = false;       // strong containment of eta in its bracket
    bool gamma_inside = false;
    Real laplace;                  // estimate of |delta|
    double laplace_rel_err = 0.0;  // |laplace/|delta|| - 1|
};

// One row per requested n: brackets, certified values, containment verdicts,
// and the Laplace estimate's relative error (estimate present for n >= 3).
std::vector<AsymptoticRow> asymptotic_report(const std::vector<unsigned>& ns,
                                             const PrecisionContext& ctx);

// Strong containment helper shared with the test suites.
bool strongly_inside(const Real& value, const Bracket& b);

}  // namespace gconst::asymptotics
