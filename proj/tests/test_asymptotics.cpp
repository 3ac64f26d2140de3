#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "gconst/asymptotics.hpp"
#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/context.hpp"

using gconst::PrecisionContext;
using gconst::RationalCoeff;
using gconst::Real;
namespace asym = gconst::asymptotics;
namespace constants = gconst::constants;

TEST_CASE("order-one bracket is centered on 3/4 with the documented width") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    asym::Bracket b = asym::eta_bracket(1, c);
    // 1! [1 - 1/4 -+ (e - 5/2)/3]: low ~ 0.6772, high ~ 0.8227
    CHECK(b.low.upper_exact() < RationalCoeff(3, 4));
    CHECK(RationalCoeff(3, 4) < b.high.lower_exact());
    CHECK(b.low.mid_double() > 0.67);
    CHECK(b.low.mid_double() < 0.68);
    CHECK(b.high.mid_double() > 0.82);
    CHECK(b.high.mid_double() < 0.83);
}

TEST_CASE("certified values sit strongly inside their brackets") {
    // n = 43 regresses the endpoint precision at factorial scale: the bracket
    // gap there is ~20 decimal orders below the endpoints themselves.
    PrecisionContext c = PrecisionContext::for_digits(12);
    for (unsigned n : {1u, 7u, 43u, 64u}) {
        CAPTURE(n);
        asym::Bracket be = asym::eta_bracket(n, c);
        Real eta = constants::eta_value(
            n, PrecisionContext::for_digits(12 + constants::magnitude_digits(n)));
        CHECK(asym::strongly_inside(eta, be));

        asym::Bracket bg = asym::gamma_bracket(n, c);
        Real gamma = constants::gamma_recurrence(n, c)[n];
        CHECK(asym::strongly_inside(gamma, bg));
    }
}

TEST_CASE("strong containment rejects a value straddling an endpoint") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    asym::Bracket b = asym::eta_bracket(1, c);
    Real at_edge = b.low;  // a ball overlapping the lower endpoint
    CHECK(!asym::strongly_inside(at_edge, b));
    Real outside = Real::exact_si(2, c.working_bits);
    CHECK(!asym::strongly_inside(outside, b));
}

TEST_CASE("saddle-point estimate lands within a few percent by order twenty") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    Real est = asym::laplace_delta_estimate(20, c);
    // frozen: 14454.292721... against |delta^(20)| = 14669.182172...
    gconst::DecimalResult r = gconst::to_decimal_trunc(est, 6);
    REQUIRE(r.certified);
    CHECK(r.text == "14454.292721");

    Real d20 = constants::delta_value(20, PrecisionContext::for_digits(16));
    double rel = est.mid_double() / gconst::abs_ball(d20).mid_double() - 1.0;
    CHECK(rel < 0.0);  // the estimate undershoots at this order
    CHECK(-rel > 0.01);
    CHECK(-rel < 0.02);
}

TEST_CASE("arguments below the validity thresholds are rejected") {
    PrecisionContext c = PrecisionContext::for_digits(10);
    CHECK_THROWS_AS(asym::eta_bracket(0, c), std::domain_error);
    CHECK_THROWS_AS(asym::gamma_bracket(0, c), std::domain_error);
    CHECK_THROWS_AS(asym::laplace_delta_estimate(2, c), std::domain_error);
}

TEST_CASE("the report assembles brackets, verdicts, and estimates per order") {
    PrecisionContext c = PrecisionContext::for_digits(10);
    std::vector<asym::AsymptoticRow> rows = asym::asymptotic_report({1, 2, 5, 15}, c);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CAPTURE(row.n);
        CHECK(row.eta_inside);
        CHECK(row.gamma_inside);
        CHECK(asym::strongly_inside(row.eta, row.eta_bounds));
        if (row.n >= 3) {
            CHECK(row.laplace_rel_err > 0.0);
            CHECK(row.laplace_rel_err < 0.2);
        } else {
            CHECK(row.laplace_rel_err == 0.0);
        }
    }
    // n = 15 |delta| matches the reference cell.
    gconst::DecimalResult d15 = gconst::to_decimal_trunc(gconst::abs_ball(rows[3].delta), 10);
    REQUIRE(d15.certified);
    CHECK(d15.text == "313.9164765016");
}
