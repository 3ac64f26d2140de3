#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "gconst/ball.hpp"
#include "gconst/constants.hpp"
#include "gconst/context.hpp"
#include "gconst/quadrature.hpp"
#include "gconst/specfun.hpp"

using gconst::PrecisionContext;
using gconst::Real;
namespace quadrature = gconst::quadrature;
using quadrature::IntegralSpec;

namespace {

std::string certified_trunc(const Real& x, int places) {
    gconst::DecimalResult r = gconst::to_decimal_trunc(x, places);
    REQUIRE(r.certified);
    return r.text;
}

}  // namespace

TEST_CASE("the bounded moment at order zero is 1 - 1/e") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    quadrature::QuadratureResult r = quadrature::integrate(IntegralSpec::lower(0), c);
    Real one = Real::exact_si(1, c.working_bits);
    Real expect = gconst::sub(one, gconst::div(one, gconst::specfun::e_ball(c)));
    CHECK(r.value.intersects(expect));
    CHECK(r.value.rad_double() < 1e-28);
    CHECK(r.cut_upper == 0.0);  // bounded range, nothing to truncate
    CHECK(r.tail.mid_is_zero());
    CHECK(r.heuristic_discretization);
    CHECK(r.nodes > 0);
    CHECK(r.levels >= 1);
}

TEST_CASE("the full moment reproduces the recurrence constants") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    quadrature::QuadratureResult r1 = quadrature::integrate(IntegralSpec::full(1), c);
    CHECK(r1.value.intersects(gconst::specfun::euler_gamma(c)));

    std::vector<Real> seq = gconst::constants::gamma_recurrence(5, c);
    for (unsigned n : {2u, 5u}) {
        quadrature::QuadratureResult r = quadrature::integrate(IntegralSpec::full(n), c);
        CAPTURE(n);
        CHECK(r.value.intersects(seq[n]));
        CHECK(r.cut_upper >= static_cast<double>(n) * n);
    }
}

TEST_CASE("the unbounded moment at order one is -Ei(-1)") {
    PrecisionContext c = PrecisionContext::for_digits(30);
    quadrature::QuadratureResult r = quadrature::integrate(IntegralSpec::upper(1), c);
    Real minus_one = Real::exact_si(-1, c.working_bits);
    CHECK(r.value.intersects(gconst::neg(gconst::specfun::ei(minus_one, c))));
}

TEST_CASE("high orders converge despite the interior valley of the integrand") {
    // The peak of (ln u)^n e^(-u) on [1, U] sits far from the map's center
    // with a deep valley in between; these orders regress the early-break
    // logic that once abandoned the far side of that valley.
    PrecisionContext c = PrecisionContext::for_digits(32);
    quadrature::QuadratureResult r16 = quadrature::integrate(IntegralSpec::upper(16), c);
    CHECK(r16.value.certain_sign() == 1);
    CHECK(r16.value.rad_double() < 1e-20);

    quadrature::QuadratureResult r20 = quadrature::integrate(IntegralSpec::upper(20), c);
    Real scaled = gconst::mul(gconst::specfun::e_ball(c), r20.value);
    CHECK(certified_trunc(scaled, 18) == "14669.182172211477631746");
}

TEST_CASE("the proven tail majorant is 2 e^(-U/2) above its threshold") {
    PrecisionContext c = PrecisionContext::for_digits(20);
    Real t = quadrature::tail_bound(IntegralSpec::upper(0), 16.0, c);
    Real expect = gconst::mul_2exp(gconst::exp_ball(Real::exact_si(-8, c.working_bits)), 1);
    CHECK(t.intersects(expect));

    // Below max(e^2, n^2) the majorant's derivation is invalid.
    CHECK_THROWS_AS(quadrature::tail_bound(IntegralSpec::upper(4), 10.0, c), std::domain_error);
    CHECK_THROWS_AS(quadrature::tail_bound(IntegralSpec::upper(0), 4.0, c), std::domain_error);

    Real none = quadrature::tail_bound(IntegralSpec::lower(5), 16.0, c);
    CHECK(none.is_exact());
    CHECK(none.mid_is_zero());
}
