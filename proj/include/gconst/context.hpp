#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gconst {

// Precision policy for a computation.  `target_digits` is the number of
// significant decimal digits the caller wants certified; `working_bits` is the
// binary precision midpoints are carried at.  The guard margin keeps the
// working precision strictly ahead of the decimal target so that accumulated
// ulp-level radius growth cannot eat into the certified digits.
struct PrecisionContext {
    int target_digits = 10;
    mpfr_prec_t working_bits = 64;

    static constexpr mpfr_prec_t min_guard_bits = 32;

    // Smallest admissible working precision for `digits` significant decimals:
    // ceil(digits * log2(10)) plus max(32, base/16) guard bits.
    static PrecisionContext for_digits(int digits) {
        if (digits < 1)
            throw std::invalid_argument("PrecisionContext: digits must be >= 1");
        auto base = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 1;
        mpfr_prec_t guard = std::max<mpfr_prec_t>(min_guard_bits, base / 16);
        return PrecisionContext{digits, base + guard};
    }

    // Same decimal target, explicit bit budget (must still satisfy the guard
    // invariant; used by the CLI's --precision-bits override).
    static PrecisionContext with_bits(int digits, mpfr_prec_t bits) {
        PrecisionContext floor_ctx = for_digits(digits);
        if (bits < floor_ctx.working_bits)
            throw std::invalid_argument(
                "PrecisionContext: working_bits below the guard-bit floor for the digit target");
        return PrecisionContext{digits, bits};
    }

    // Escalation step: same target, double the bit budget.
    [[nodiscard]] PrecisionContext escalated() const {
        return PrecisionContext{target_digits, working_bits * 2};
    }

    // Widened decimal target (e.g. magnitude compensation for values ~ n!).
    [[nodiscard]] PrecisionContext boosted(int extra_digits) const {
        PrecisionContext b = for_digits(target_digits + std::max(0, extra_digits));
        b.working_bits = std::max(b.working_bits, working_bits);
        b.target_digits = target_digits + std::max(0, extra_digits);
        return b;
    }
};

}  // namespace gconst
