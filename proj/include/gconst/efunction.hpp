#pragma once

#include <array>
#include <atomic>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

namespace gconst::efun {

// Series coefficient a_k of the order-n entire series sum_k a_k t^k / k!:
// a_k = (-1)^k n! / (k+1)^(n+1), exact and in lowest terms.
RationalCoeff coeff_a(unsigned n, unsigned long k);

// One order-n series with a growable exact-coefficient cache.  Growth happens
// chunk-at-a-time under a lock; published chunks are immutable, so concurrent
// reads of already-materialized coefficients need no synchronization.  Storage
// is capped (coefficients beyond the cap are recomputed on demand).
class EFunctionSeries {
  public:
    explicit EFunctionSeries(unsigned n) : n_(n) {}
    EFunctionSeries(const EFunctionSeries&) = delete;
    EFunctionSeries& operator=(const EFunctionSeries&) = delete;
    ~EFunctionSeries();

    unsigned order() const { return n_; }
    // a_k (cached when k is under the storage cap).
    RationalCoeff series_coeff(unsigned long k) const;
    // Taylor coefficient c_k = a_k / k! of sum_k c_k t^k.
    RationalCoeff taylor_coeff(unsigned long k) const;
    void ensure(unsigned long k_max) const;

    static constexpr unsigned long storage_cap = 4096;

  private:
    static constexpr unsigned long chunk_len = 128;
    static constexpr unsigned long num_chunks = storage_cap / chunk_len;
    struct Chunk;
    const Chunk* chunk_at(unsigned long ci) const;

    unsigned n_;
    mutable std::array<std::atomic<Chunk*>, num_chunks> chunks_{};
    mutable std::mutex grow_mx_;
};

// Certified evaluation of the entire function F_n(t) = sum_k a_k t^k / k! at
// any real t.  The series is summed past k = 2|t| until the term ratio bound
// |t|/(k+1) <= 1/2 certifies a factor-2 geometric tail, which is folded into
// the radius.
Real eval_F(unsigned n, const Real& t, const PrecisionContext& ctx);
// d/dt F_n(t), i.e. the same series with coefficients shifted by one.
Real eval_F_derivative(unsigned n, const Real& t, const PrecisionContext& ctx);

// --- exact operator actions on Taylor coefficient vectors ---------------------
// D~ = t d/dt + 1 maps sum c_k t^k to sum (k+1) c_k t^k.
std::vector<RationalCoeff> apply_dtilde(const std::vector<RationalCoeff>& c);
// D = d/dt + 1 maps sum c_k t^k to sum ((k+1) c_{k+1} + c_k) t^k; the output
// is one entry shorter since c_{K+1} is unknown.
std::vector<RationalCoeff> apply_d(const std::vector<RationalCoeff>& c);

// First K+1 Taylor coefficients of F_n.
std::vector<RationalCoeff> taylor_prefix(unsigned n, unsigned long K);
// First K+1 Taylor coefficients of e^(-t), i.e. (-1)^k / k!.
std::vector<RationalCoeff> exp_neg_prefix(unsigned long K);

// --- exact identity checks (zero tolerance) ------------------------------------
struct IdentityCheck {
    std::string name;
    bool pass = true;
    long first_bad_k = -1;
};
struct IdentityReport {
    unsigned n = 0;
    unsigned long K = 0;
    std::vector<IdentityCheck> checks;
    bool pass = true;
};

// Runs, over the first K+1 coefficients and entirely in exact rational
// arithmetic:
//   derivative-recurrence  (k+1) a_k^(n) = n a_k^(n-1)            (n >= 1)
//   dtilde-power           D~^(n+1)[F_n] = n! e^(-t)
//   annihilator            D o D~^(n+1)[F_n] = 0
//   order-zero-closure     1 - t F_0 = e^(-t)
IdentityReport verify_ode_identities(unsigned n, unsigned long K);

// The same checks on caller-supplied coefficient vectors (the fault-injection
// seam used by the mutation tests).
std::optional<long> check_derivative_recurrence(const std::vector<RationalCoeff>& c_n,
                                                const std::vector<RationalCoeff>& c_nm1,
                                                unsigned n);
std::optional<long> check_dtilde_power(const std::vector<RationalCoeff>& c_n, unsigned n);
std::optional<long> check_annihilator(const std::vector<RationalCoeff>& c_n, unsigned n);
std::optional<long> check_order_zero_closure(const std::vector<RationalCoeff>& c_0);

// --- shared-denominator structure ----------------------------------------------
struct DenominatorGrowthRow {
    unsigned long k;
    Real ln_g_k;        // ln(lcm(1..k+1)^(n+1))
    double linear_term; // (n+1)(k+1)
};
struct DenominatorReport {
    unsigned n = 0;
    unsigned long K = 0;
    bool divisibility_pass = true;
    long first_bad_j = -1;
    long first_bad_k = -1;
    std::vector<DenominatorGrowthRow> growth;
};

// Checks that g_k = lcm(1..k+1)^(n+1) clears every a_j with j <= k (exact
// divisibility for all pairs j <= k <= K) and reports the growth of ln(g_k)
// against its prime-number-theorem slope (n+1)(k+1).
DenominatorReport denominator_check(unsigned n, unsigned long K,
                                    const std::vector<unsigned long>& growth_samples,
                                    const PrecisionContext& ctx);

}  // namespace gconst::efun
