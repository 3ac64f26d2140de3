#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::constants {

// Pluggable integer-zeta source: the seam that lets tests feed corrupted
// seeds into the recurrence and watch the cross-route checks catch it.
using ZetaProvider = std::function<Real(unsigned long, const PrecisionContext&)>;

// --- individual routes -----------------------------------------------------------
// Alternating factorial series n! sum_{k>=1} (-1)^(k+1) / (k^n k!); the
// canonical (fully rigorous) route for eta.
Real eta_value(unsigned n, const PrecisionContext& ctx);
// Tanh-sinh route for eta (cross-validation only).
Real eta_quadrature(unsigned n, const PrecisionContext& ctx);

// gamma^(0..n_max) through the cumulant recurrence
//   gamma^(n+1) = gamma gamma^(n) + sum_{j=0}^{n-1} (n!/j!) zeta(n+1-j) gamma^(j),
// seeded by gamma^(0) = 1 and gamma^(1) = euler_gamma.
std::vector<Real> gamma_recurrence(unsigned n_max, const PrecisionContext& ctx,
                                   const ZetaProvider& zeta = {});

// Log-moment cumulants: kappa_1 = euler_gamma, kappa_j = (j-1)! zeta(j).
std::vector<Real> cumulants(unsigned j_max, const PrecisionContext& ctx,
                            const ZetaProvider& zeta = {});

enum class DeltaRoute { Quadrature, Identity };
// delta^(n): Quadrature is the canonical route, (-1)^(n+1) e * (upper moment);
// Identity derives it as e (eta^(n) - gamma^(n)) from the series + recurrence.
Real delta_value(unsigned n, const PrecisionContext& ctx,
                 DeltaRoute route = DeltaRoute::Quadrature);

// eta^(n) - gamma^(n) - delta^(n)/e from three independent routes; contains 0
// whenever all three routes are sound.
Real hardy_residual(unsigned n, const PrecisionContext& ctx);

// -e Ei(1): the closed form behind the n = 1 column checks.
Real delta_star(const PrecisionContext& ctx);

// --- assembled table ---------------------------------------------------------------
struct RouteSet {
    std::optional<Real> series, quadrature, recurrence, identity;
};

struct ConstantRecord {
    unsigned n = 0;
    Real eta, gamma, delta;  // canonical certified balls
    Real hardy;              // Hardy-identity residual ball
    RouteSet eta_routes, gamma_routes, delta_routes;
    bool exact_row = false;  // n = 0: gamma/delta carried as exact closed forms
    int escalations = 0;     // precision doublings needed to certify rendering
    bool certified = true;   // all three truncations pinned at the target digits
};

struct TableResult {
    std::vector<ConstantRecord> rows;
    int digits = 0;
    int escalations = 0;  // max over rows
    bool all_certified = true;
};

// Rows 0..n_max with every displayed value certified to `digits` truncated
// decimal places (10^(-digits) absolute ball width, escalating the working
// precision up to 3 doublings per row when needed).
TableResult table(unsigned n_max, int digits, const PrecisionContext& base);

// --- cross-route validation -----------------------------------------------------------
struct CrossValidationRow {
    unsigned n = 0;
    bool eta_routes_intersect = true;
    bool gamma_routes_intersect = true;
    bool delta_routes_intersect = true;
    bool hardy_contains_zero = true;
    bool delta_sign_ok = true;  // sign(delta) = (-1)^(n+1), ball excludes 0
    double hardy_width = 0.0;
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    bool pass = true;
};

CrossValidationReport cross_validate(unsigned n_lo, unsigned n_hi, const PrecisionContext& ctx,
                                     const ZetaProvider& zeta = {});

// Decimal magnitude of n! (number of digits before the point); the precision
// boost that keeps absolute targets meaningful for factorial-scale values.
int magnitude_digits(unsigned n);

}  // namespace gconst::constants
