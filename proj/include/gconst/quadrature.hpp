#pragma once

#include <stdexcept>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::quadrature {

// The three moment integrals of the unit-exponential log, all stated in the
// u-frame (the x -> u = e^(-x) substitution has already been applied):
//   LowerMoment:  integral over (0,1)  of (-ln u)^n e^(-u) du
//   UpperMoment:  integral over (1,oo) of ( ln u)^n e^(-u) du
//   FullMoment:   integral over (0,oo) of (-ln u)^n e^(-u) du
//                 (= LowerMoment + (-1)^n UpperMoment)
enum class IntegralKind { LowerMoment, UpperMoment, FullMoment };

struct IntegralSpec {
    IntegralKind kind;
    unsigned n = 0;
    bool transformed = true;  // u-frame; kept for the result record

    static IntegralSpec lower(unsigned n) { return {IntegralKind::LowerMoment, n, true}; }
    static IntegralSpec upper(unsigned n) { return {IntegralKind::UpperMoment, n, true}; }
    static IntegralSpec full(unsigned n) { return {IntegralKind::FullMoment, n, true}; }
};

struct QuadratureResult {
    Real value;                  // certified ball for the named integral
    unsigned long nodes = 0;     // integrand evaluations
    int levels = 0;              // tanh-sinh halvings used
    double cut_upper = 0.0;      // U where the infinite range was cut (0 if none)
    Real tail;                   // the tail majorant that was folded into value
    // The discretization error is estimated by Richardson-style level
    // comparison (4x the last inter-level difference) rather than a proven
    // bound; the tail and all per-node rounding are rigorous.
    bool heuristic_discretization = true;
};

// Thrown when the level budget is exhausted before the inter-level difference
// meets the target; carries the best enclosure reached.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(QuadratureResult r)
        : std::runtime_error("quadrature: level budget exhausted"), best(std::move(r)) {}
    QuadratureResult best;
};

// Proven majorant of the discarded tail integral_U^oo (ln u)^n e^(-u) du,
// namely 2 e^(-U/2), valid because n ln ln u <= u/2 holds on u >= U once
// U >= max(e^2, n^2).  Throws std::domain_error below that threshold.
// LowerMoment integrals have no tail; the bound is exactly 0 there.
Real tail_bound(const IntegralSpec& spec, double U, const PrecisionContext& ctx);

// Tanh-sinh evaluation of the requested integral to roughly
// 10^(-target_digits) relative accuracy, with node doubling until the
// inter-level difference certifies; the truncation point U for unbounded
// ranges is chosen as the smallest admissible value making the proven tail
// bound negligible at the target.
QuadratureResult integrate(const IntegralSpec& spec, const PrecisionContext& ctx);

}  // namespace gconst::quadrature
