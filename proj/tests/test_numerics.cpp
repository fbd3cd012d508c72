#include "sextic/numerics.hpp"

#include <doctest.h>

#include <boost/math/constants/constants.hpp>

using namespace sextic;

TEST_CASE("precision context sizing") {
  CHECK(PrecisionContext().working_digits() == 80);
  CHECK(PrecisionContext::for_order(50, 10).guard_digits() == 30);
  CHECK(PrecisionContext::for_order(50, 40).guard_digits() == 48);
  CHECK(PrecisionContext::for_order(60, 66).guard_digits() == 80);
  CHECK_THROWS_AS(PrecisionContext(50, 9), std::invalid_argument);
  CHECK_THROWS_AS(PrecisionContext(0, 30), std::invalid_argument);
  CHECK(PrecisionContext(50, 30).with_extra_guard(5) == PrecisionContext(50, 35));
}

TEST_CASE("precision scope restores the default") {
  const unsigned before = BigReal::default_precision();
  {
    PrecisionScope s(PrecisionContext(100, 20));
    CHECK(BigReal::default_precision() == 120);
    {
      PrecisionScope inner(PrecisionContext(20, 10));
      CHECK(BigReal::default_precision() == 30);
    }
    CHECK(BigReal::default_precision() == 120);
  }
  CHECK(BigReal::default_precision() == before);
}

TEST_CASE("decimal parsing is exact at working precision") {
  PrecisionScope s(PrecisionContext(80, 20));
  const BigReal tenth = parse_decimal("0.1");
  CHECK(abs(tenth * 10 - 1) < PrecisionContext::pow10_neg(95));
  // A double round-trip would be off near 1e-17.
  CHECK(abs(tenth - BigReal(0.1)) > PrecisionContext::pow10_neg(20));
  CHECK(parse_decimal("-2.5e3") == -2500);
  CHECK_THROWS_AS(parse_decimal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("1,5"), std::invalid_argument);
}

TEST_CASE("decimal rendering") {
  PrecisionScope s(PrecisionContext(30, 10));
  CHECK(to_decimal(BigReal(0), 10) == "0");
  CHECK(to_decimal(BigReal(1) / 4, 5) == "2.5000e-01");
  CHECK(to_decimal(BigReal(-3), 3) == "-3.00e+00");
}

TEST_CASE("polynomial arithmetic") {
  PrecisionScope s(PrecisionContext(30, 10));
  const Polynomial a{1, 2};       // 1 + 2x
  const Polynomial b{-1, 0, 3};   // -1 + 3x^2
  const Polynomial prod = a * b;  // -1 - 2x + 3x^2 + 6x^3
  REQUIRE(prod.degree() == 3);
  CHECK(prod[0] == -1);
  CHECK(prod[1] == -2);
  CHECK(prod[2] == 3);
  CHECK(prod[3] == 6);
  CHECK(prod[7] == 0);
  CHECK((a + b)[2] == 3);
  CHECK((a - b)[0] == 2);
  CHECK((-a)[1] == -2);
  CHECK(prod.derivative()[2] == 18);
  CHECK(prod.evaluate(BigReal(2)) == 55);
  CHECK(prod.max_abs_coeff() == 6);
  CHECK(a.shifted(2)[3] == 2);
  CHECK(Polynomial::monomial(4, BigReal(7))[4] == 7);
  CHECK(poly_arith(a, b, PolyOp::mul)[3] == 6);
}

TEST_CASE("polynomials at mismatched precision refuse to combine") {
  Polynomial low, high;
  {
    PrecisionScope s(PrecisionContext(20, 10));
    low = Polynomial{1, 1};
  }
  {
    PrecisionScope s(PrecisionContext(60, 10));
    high = Polynomial{1, 1};
  }
  CHECK_THROWS_AS(low + high, ContractViolation);
  CHECK_THROWS_AS(low * high, ContractViolation);
}

TEST_CASE("tanh-sinh quadrature against closed forms") {
  const PrecisionContext ctx(60, 30);
  PrecisionScope s(ctx);
  const BigReal pi = boost::math::constants::pi<BigReal>();
  const BigReal tol = PrecisionContext::pow10_neg(60);

  // int_0^inf exp(-x^2) dx = sqrt(pi)/2; cut where the tail is negligible.
  QuadratureOptions gauss{BigReal(16)};
  const BigReal g = de_quadrature([](const BigReal& x) { return exp(-x * x); }, ctx, gauss);
  CHECK(abs(g - sqrt(pi) / 2) < tol);

  // int_0^1 x^3 dx = 1/4 and int_0^1 1/(1+x^2) = pi/4.
  QuadratureOptions unit{BigReal(1)};
  CHECK(abs(de_quadrature([](const BigReal& x) { return x * x * x; }, ctx, unit) - BigReal(1) / 4) < tol);
  CHECK(abs(de_quadrature([](const BigReal& x) { return 1 / (1 + x * x); }, ctx, unit) - pi / 4) < tol);
}

TEST_CASE("quadrature reports non-convergence with both estimates") {
  const PrecisionContext ctx(60, 30);
  PrecisionScope s(ctx);
  QuadratureOptions opts{BigReal(1), 3};
  // A kink in the interior stalls the double-exponential rule.
  auto kink = [](const BigReal& x) { return abs(x - BigReal(1) / 3); };
  try {
    de_quadrature(kink, ctx, opts);
    FAIL("expected QuadratureFailure");
  } catch (const QuadratureFailure& e) {
    CHECK(abs(e.last_estimate() - e.previous_estimate()) > 0);
  }
}
