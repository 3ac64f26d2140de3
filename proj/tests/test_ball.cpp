#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gconst/ball.hpp"
#include "gconst/context.hpp"

using gconst::PrecisionContext;
using gconst::RationalCoeff;
using gconst::Real;

namespace {

// Exact mirror of a ball op on rationals (div requires a nonzero divisor).
RationalCoeff exact_op(const RationalCoeff& a, const RationalCoeff& b, gconst::BallOp op) {
    RationalCoeff r;
    switch (op) {
        case gconst::BallOp::Add: r = a + b; break;
        case gconst::BallOp::Sub: r = a - b; break;
        case gconst::BallOp::Mul: r = a * b; break;
        case gconst::BallOp::Div: r = a / b; break;
    }
    r.canonicalize();
    return r;
}

bool encloses(const Real& ball, const RationalCoeff& point) {
    return ball.lower_exact() <= point && point <= ball.upper_exact();
}

}  // namespace

TEST_CASE("exact constructors carry zero radius and exact endpoints") {
    Real a = Real::exact_si(-7, 64);
    CHECK(a.is_exact());
    CHECK(a.lower_exact() == RationalCoeff(-7));
    CHECK(a.upper_exact() == RationalCoeff(-7));

    Real d = Real::dyadic(3, -2, 64);  // 3/4 is exactly representable
    CHECK(d.is_exact());
    CHECK(d.mid_exact() == RationalCoeff(3, 4));
}

TEST_CASE("inexact rationals are enclosed within one ulp") {
    Real third = Real::from_rational(RationalCoeff(1, 3), 64);
    CHECK(!third.is_exact());
    CHECK(encloses(third, RationalCoeff(1, 3)));
    CHECK(third.rad_double() < 1e-18);
}

TEST_CASE("single ball ops always contain the exact rational result") {
    std::mt19937_64 rng(20260821);
    std::uniform_int_distribution<long> num(-999, 999);
    std::uniform_int_distribution<long> den(1, 999);
    std::uniform_int_distribution<int> pick(0, 3);

    for (int iter = 0; iter < 1000; ++iter) {
        RationalCoeff qa(num(rng), den(rng));
        RationalCoeff qb(num(rng), den(rng));
        qa.canonicalize();
        qb.canonicalize();
        auto op = static_cast<gconst::BallOp>(pick(rng));
        if (op == gconst::BallOp::Div && qb == 0) continue;

        Real a = Real::from_rational(qa, 64);
        Real b = Real::from_rational(qb, 64);
        if (op == gconst::BallOp::Div && b.contains_zero()) continue;
        Real r = gconst::ball_arith(a, b, op);
        CAPTURE(iter);
        REQUIRE(encloses(r, exact_op(qa, qb, op)));
    }
}

TEST_CASE("short op chains keep the exact value enclosed") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 50);
    std::uniform_int_distribution<int> pick(0, 2);  // add/sub/mul chains

    for (int iter = 0; iter < 200; ++iter) {
        RationalCoeff q(num(rng), den(rng));
        q.canonicalize();
        Real x = Real::from_rational(q, 96);
        for (int step = 0; step < 5; ++step) {
            RationalCoeff w(num(rng), den(rng));
            w.canonicalize();
            auto op = static_cast<gconst::BallOp>(pick(rng));
            x = gconst::ball_arith(x, Real::from_rational(w, 96), op);
            q = exact_op(q, w, op);
        }
        REQUIRE(encloses(x, q));
    }
}

TEST_CASE("higher working precision refines the radius") {
    RationalCoeff q(355, 113);
    Real coarse = gconst::mul(Real::from_rational(q, 64), Real::from_rational(q, 64));
    Real fine = gconst::mul(Real::from_rational(q, 256), Real::from_rational(q, 256));
    CHECK(fine.rad_double() < coarse.rad_double());
    CHECK(encloses(coarse, q * q));
    CHECK(encloses(fine, q * q));
}

TEST_CASE("division by a zero-straddling ball is rejected") {
    Real z = Real::exact_si(0, 64);
    z.add_error_2exp(-4);
    CHECK(z.contains_zero());
    CHECK_THROWS_AS(gconst::div(Real::exact_si(1, 64), z), std::domain_error);
}

TEST_CASE("elementary functions stay inclusion-monotone") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    for (long k : {1L, 2L, 7L, 100L}) {
        Real x = Real::exact_si(k, c.working_bits);
        Real back = gconst::exp_ball(gconst::log_ball(x));
        CHECK(encloses(back, RationalCoeff(k)));
        Real sq = gconst::mul(gconst::sqrt_ball(x), gconst::sqrt_ball(x));
        CHECK(encloses(sq, RationalCoeff(k)));
    }
    Real neg = Real::exact_si(-1, 64);
    CHECK_THROWS_AS(gconst::log_ball(neg), std::domain_error);
    CHECK_THROWS_AS(gconst::sqrt_ball(neg), std::domain_error);
    CHECK_THROWS_AS(gconst::log1p_ball(Real::exact_si(-2, 64)), std::domain_error);
}

TEST_CASE("predicates decide containment and order exactly") {
    Real a = Real::exact_si(1, 64);
    a.add_error_2exp(-8);
    Real b = Real::exact_si(1, 64);
    b.add_error_2exp(-4);
    CHECK(b.contains(a));
    CHECK(!a.contains(b));
    CHECK(a.intersects(b));
    CHECK(a.certain_sign() == 1);
    CHECK(gconst::neg(a).certain_sign() == -1);

    Real lo = Real::exact_si(1, 64);
    Real hi = Real::exact_si(2, 64);
    CHECK(lo.certainly_less(hi));
    CHECK(!hi.certainly_less(lo));
    hi.add_error(Real::exact_si(2, 64));  // [0, 4] now touches [1, 1]
    CHECK(!lo.certainly_less(hi));
}

TEST_CASE("add_error inflates the radius by the bound's magnitude") {
    Real a = Real::exact_si(5, 64);
    Real bound = Real::exact_si(-3, 64);  // |mid| + rad = 3
    a.add_error(bound);
    CHECK(encloses(a, RationalCoeff(2)));
    CHECK(encloses(a, RationalCoeff(8)));
    CHECK(!encloses(a, RationalCoeff(9)));
}

TEST_CASE("decimal literals parse into tight enclosures") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    Real tenth = gconst::enclose_decimal("0.1", c);
    CHECK(encloses(tenth, RationalCoeff(1, 10)));
    CHECK(tenth.rad_double() < 1e-20);

    Real minus_one = gconst::enclose_decimal("-1", c);
    CHECK(minus_one.is_exact());
    CHECK(minus_one.mid_exact() == RationalCoeff(-1));

    Real sci = gconst::enclose_decimal("2.5e3", c);
    CHECK(encloses(sci, RationalCoeff(2500)));

    // Leading integer zero with high fraction digits: regression for the
    // exactness bookkeeping misreading the digit string as octal.
    Real high_digits = gconst::enclose_decimal("0.6842890591", c);
    CHECK(encloses(high_digits, RationalCoeff(6842890591L, 10000000000L)));

    CHECK_THROWS_AS(gconst::enclose_decimal("", c), std::invalid_argument);
    CHECK_THROWS_AS(gconst::enclose_decimal("abc", c), std::invalid_argument);
    CHECK_THROWS_AS(gconst::enclose_decimal("1.2.3", c), std::invalid_argument);
}

TEST_CASE("truncated rendering cuts toward zero, rounding rounds") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    Real x = gconst::enclose_decimal("1.23456789", c);
    CHECK(gconst::to_decimal_trunc(x, 4).text == "1.2345");
    CHECK(gconst::to_decimal(x, 4).text == "1.2346");

    Real neg = gconst::enclose_decimal("-1.9999", c);
    CHECK(gconst::to_decimal_trunc(neg, 2).text == "-1.99");
    CHECK(gconst::to_decimal(neg, 2).text == "-2.00");

    Real six = Real::exact_si(6, c.working_bits);
    CHECK(gconst::to_decimal_trunc(six, 10).text == "6.0000000000");
}

TEST_CASE("a ball straddling a truncation boundary is not certified") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    Real x = gconst::enclose_decimal("0.3", c);
    x.add_error(gconst::enclose_decimal("0.001", c));  // [0.299, 0.301] spans 0.2|0.3
    gconst::DecimalResult r = gconst::to_decimal_trunc(x, 1);
    CHECK(!r.certified);
    Real tight = gconst::enclose_decimal("0.25", c);
    CHECK(gconst::to_decimal_trunc(tight, 1).certified);
}
