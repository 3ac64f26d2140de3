#pragma once

#include <string>
#include <vector>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::verify {

// quick: reference-table reproduction at ten decimal places plus the exact
// identity suite at small order.  full: every check the acceptance gate runs,
// at its full parameter ranges.
enum class SuiteLevel { Quick, Full };

// Fault-injection switch for the companion-system residual: DropCornerEntry
// removes the 1/t corner entry that couples F_0 to the constant component, so
// the residual must stop containing zero.
enum class SystemFault { None, DropCornerEntry };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // one-line summary: margins, counts, first failure
    double seconds = 0.0;
};

struct SuiteReport {
    SuiteLevel level = SuiteLevel::Quick;
    std::vector<CheckResult> checks;
    bool pass = true;  // conjunction of the individual checks
    double seconds = 0.0;
};

// Max-norm of Y'(t0) - A(t0) Y(t0) as a ball, where Y stacks
// [F_0(t0), ..., F_m(t0), 1], Y' the differentiated series values with a 0
// for the constant component, and A(t0) is the companion matrix of the
// first-order system the F_n satisfy: row 0 reads -(1 + 1/t) F_0 + (1/t) * 1,
// row i >= 1 reads (i/t) F_{i-1} - (1/t) F_i, and the constant row is zero.
// The residual ball must contain zero on a sound build; t0 = 0 (the system's
// only singularity) throws std::domain_error.
Real ode_system_residual(unsigned m, const RationalCoeff& t0, const PrecisionContext& ctx,
                         SystemFault fault = SystemFault::None);

// Runs the named level's checks sequentially and aggregates the verdict.
// ctx.target_digits steers only the discretionary cross-route check; the
// acceptance-pinned checks carry their own digit targets.
SuiteReport run_suite(SuiteLevel level, const PrecisionContext& ctx);

// The checks a single acceptance criterion (1..10) is judged by, at that
// criterion's pinned parameters; the criterion's verdict is their conjunction.
// Throws std::invalid_argument outside 1..10.
std::vector<CheckResult> run_criterion(int criterion);

}  // namespace gconst::verify
