#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/context.hpp"
#include "gconst/efunction.hpp"
#include "gconst/specfun.hpp"

using gconst::PrecisionContext;
using gconst::RationalCoeff;
using gconst::Real;
namespace efun = gconst::efun;

namespace {

RationalCoeff rational_abs(const RationalCoeff& q) {
    RationalCoeff r = q < 0 ? RationalCoeff(-q) : q;
    return r;
}

std::string certified_trunc(const Real& x, int places) {
    gconst::DecimalResult r = gconst::to_decimal_trunc(x, places);
    REQUIRE(r.certified);
    return r.text;
}

}  // namespace

TEST_CASE("series coefficients take their closed-form values") {
    CHECK(efun::coeff_a(0, 0) == RationalCoeff(1));
    CHECK(efun::coeff_a(3, 0) == RationalCoeff(6));
    CHECK(efun::coeff_a(0, 1) == RationalCoeff(-1, 2));
    CHECK(efun::coeff_a(0, 3) == RationalCoeff(-1, 4));
    CHECK(efun::coeff_a(2, 2) == RationalCoeff(2, 27));
    CHECK(efun::coeff_a(1, 3) == RationalCoeff(-1, 16));
}

TEST_CASE("coefficients alternate in sign and shrink strictly") {
    for (unsigned n : {0u, 3u}) {
        RationalCoeff prev_abs;
        for (unsigned long k = 0; k <= 50; ++k) {
            RationalCoeff a = efun::coeff_a(n, k);
            CAPTURE(n);
            CAPTURE(k);
            CHECK((k % 2 == 0 ? a > 0 : a < 0));
            RationalCoeff cur = rational_abs(a);
            if (k > 0) CHECK(cur < prev_abs);
            prev_abs = cur;
        }
    }
}

TEST_CASE("the coefficient cache agrees with direct computation past its cap") {
    efun::EFunctionSeries s(2);
    s.ensure(200);
    CHECK(s.series_coeff(100) == efun::coeff_a(2, 100));
    CHECK(s.taylor_coeff(5) ==
          RationalCoeff(efun::coeff_a(2, 5)) / RationalCoeff(gconst::specfun::factorial(5)));
    // Beyond the storage cap the coefficient is recomputed, not stored.
    unsigned long far = efun::EFunctionSeries::storage_cap + 904;
    CHECK(s.series_coeff(far) == efun::coeff_a(2, far));
}

TEST_CASE("operator actions on short hand-checked vectors") {
    std::vector<RationalCoeff> c = {RationalCoeff(1), RationalCoeff(1, 2), RationalCoeff(1, 3)};
    std::vector<RationalCoeff> dt = efun::apply_dtilde(c);
    REQUIRE(dt.size() == 3);
    CHECK(dt[0] == RationalCoeff(1));
    CHECK(dt[1] == RationalCoeff(1));
    CHECK(dt[2] == RationalCoeff(1));

    std::vector<RationalCoeff> d = efun::apply_d(c);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == RationalCoeff(3, 2));   // 1*c_1 + c_0
    CHECK(d[1] == RationalCoeff(7, 6));   // 2*c_2 + c_1
}

TEST_CASE("differential identities hold exactly through order six") {
    for (unsigned n = 0; n <= 6; ++n) {
        efun::IdentityReport rep = efun::verify_ode_identities(n, 80);
        CAPTURE(n);
        CHECK(rep.pass);
        CHECK(rep.checks.size() == (n == 0 ? 3u : 4u));
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.pass);
            CHECK(c.first_bad_k == -1);
        }
    }
}

TEST_CASE("a single corrupted coefficient is pinpointed by every check") {
    const unsigned n = 1;
    std::vector<RationalCoeff> clean = efun::taylor_prefix(n, 40);
    std::vector<RationalCoeff> lower = efun::taylor_prefix(n - 1, 40);
    std::vector<RationalCoeff> c0 = efun::taylor_prefix(0, 40);

    CHECK(!efun::check_derivative_recurrence(clean, lower, n).has_value());
    CHECK(!efun::check_dtilde_power(clean, n).has_value());
    CHECK(!efun::check_annihilator(clean, n).has_value());
    CHECK(!efun::check_order_zero_closure(c0).has_value());

    std::vector<RationalCoeff> bad = clean;
    bad[3] += RationalCoeff(1, 7);

    auto rec = efun::check_derivative_recurrence(bad, lower, n);
    REQUIRE(rec.has_value());
    CHECK(*rec == 3);

    auto dt = efun::check_dtilde_power(bad, n);
    REQUIRE(dt.has_value());
    CHECK(*dt == 3);

    // D mixes adjacent coefficients, so the fault surfaces one slot earlier.
    auto ann = efun::check_annihilator(bad, n);
    REQUIRE(ann.has_value());
    CHECK(*ann == 2);

    std::vector<RationalCoeff> bad0 = c0;
    bad0[3] += RationalCoeff(1, 7);
    auto cl = efun::check_order_zero_closure(bad0);
    REQUIRE(cl.has_value());
    CHECK(*cl == 4);  // closure compares -c_{k-1} against coefficient k
}

TEST_CASE("shared denominators clear every earlier coefficient") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    efun::DenominatorReport rep = efun::denominator_check(2, 120, {10, 60, 120}, c);
    CHECK(rep.divisibility_pass);
    CHECK(rep.first_bad_j == -1);
    CHECK(rep.first_bad_k == -1);
    REQUIRE(rep.growth.size() == 3);
    for (const auto& row : rep.growth) {
        CAPTURE(row.k);
        CHECK(row.linear_term == doctest::Approx(3.0 * (row.k + 1)));
        double ratio = row.ln_g_k.mid_double() / row.linear_term;
        CHECK(ratio > 0.6);
        CHECK(ratio < 1.4);
    }
}

TEST_CASE("series evaluation encloses the order-zero closed form") {
    PrecisionContext c = PrecisionContext::for_digits(40);
    Real one = Real::exact_si(1, c.working_bits);
    // F_0(t) = (1 - e^(-t))/t
    CHECK(certified_trunc(efun::eval_F(0, one, c), 30) ==
          "0.632120558828557678404476229838");
    Real ten = Real::exact_si(10, c.working_bits);
    CHECK(certified_trunc(efun::eval_F(0, ten, c), 30) ==
          "0.099995460007023751514846440848");
}

TEST_CASE("series evaluation at zero is the exact leading coefficient") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    Real zero = Real::exact_si(0, c.working_bits);
    for (unsigned n : {0u, 3u, 7u}) {
        Real v = efun::eval_F(n, zero, c);
        CAPTURE(n);
        CHECK(v.is_exact());
        CHECK(v.mid_exact() == RationalCoeff(gconst::specfun::factorial(n)));
    }
}

TEST_CASE("evaluation at negative argument matches its decimal expansion") {
    PrecisionContext c = PrecisionContext::for_digits(40);
    Real minus_one = Real::exact_si(-1, c.working_bits);
    CHECK(certified_trunc(efun::eval_F(1, minus_one, c), 30) ==
          "1.317902151454403894860008844249");
}

TEST_CASE("evaluation at one meets the alternating-series constants") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    Real one = Real::exact_si(1, c.working_bits);
    for (unsigned n = 0; n <= 8; ++n) {
        Real via_series = efun::eval_F(n, one, c);
        Real direct = gconst::constants::eta_value(n, c);
        CAPTURE(n);
        CHECK(via_series.intersects(direct));
    }
}

TEST_CASE("derivative evaluation matches the shifted series") {
    PrecisionContext c = PrecisionContext::for_digits(40);
    Real one = Real::exact_si(1, c.working_bits);
    CHECK(certified_trunc(efun::eval_F_derivative(0, one, c), 30) ==
          "-0.264241117657115356808952459677");

    Real zero = Real::exact_si(0, c.working_bits);
    for (unsigned n : {0u, 4u}) {
        Real d = efun::eval_F_derivative(n, zero, c);
        // F_n'(0) = a_1 = -n!/2^(n+1)
        gconst::BigInteger power_of_two = gconst::BigInteger(1) << (n + 1);
        RationalCoeff expect(gconst::specfun::factorial(n));
        expect /= RationalCoeff(power_of_two);
        expect = -expect;
        expect.canonicalize();
        CAPTURE(n);
        CHECK(d.lower_exact() <= expect);
        CHECK(expect <= d.upper_exact());
        CHECK(d.rad_double() < 1e-25);
    }
}

TEST_CASE("arguments beyond the supported range are rejected") {
    PrecisionContext c = PrecisionContext::for_digits(10);
    CHECK_THROWS_AS(efun::eval_F(0, Real::exact_si(100000, c.working_bits), c),
                    std::domain_error);
    CHECK_THROWS_AS(efun::eval_F_derivative(0, Real::exact_si(-100000, c.working_bits), c),
                    std::domain_error);
}
