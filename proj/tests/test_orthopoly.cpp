#include "sextic/orthopoly.hpp"

#include <doctest.h>

#include <boost/math/special_functions/factorials.hpp>

using namespace sextic;

TEST_CASE("polynomials are monic, of alternating parity and orthogonal") {
  const PrecisionContext ctx(50, 30);
  const MomentTable m = build_moments(Params::from_ints(1, -1, ctx), 16, ctx);
  const RecurrenceTable t = build_recurrence(m, 12, ctx);
  PrecisionScope s(ctx);
  for (std::size_t n = 0; n <= 12; ++n) {
    const Polynomial& P = t.poly(n);
    REQUIRE(P.degree() == n);
    CHECK(P[n] == 1);
    for (std::size_t k = n % 2 == 0 ? 1 : 0; k < n; k += 2) CHECK(P[k] == 0);
    for (std::size_t j = 0; j < n; ++j) {
      const BigReal ip = moment_inner_product(m, P, t.poly(j));
      CHECK(abs(ip) < PrecisionContext::pow10_neg(60) * sqrt(t.h(n) * t.h(j)));
    }
  }
}

TEST_CASE("norms from direct quadrature of P_n^2 w") {
  const PrecisionContext ctx(50, 30);
  const Params params = Params::from_ints(-1, 2, ctx);
  const RecurrenceTable t = build_recurrence(params, 8, ctx);
  PrecisionScope s(ctx);
  QuadratureOptions opts{tail_cutoff(params, ctx)};
  for (std::size_t n : {1u, 4u, 8u}) {
    const Polynomial& P = t.poly(n);
    const BigReal h = 2 * de_quadrature(
                              [&](const BigReal& x) {
                                const BigReal v = P.evaluate(x);
                                return v * v * exp(-potential(params, x));
                              },
                              ctx, opts);
    CHECK(abs(h / t.h(n) - 1) < PrecisionContext::pow10_neg(45));
  }
}

TEST_CASE("Hankel determinants: product of norms vs direct LU") {
  const PrecisionContext ctx(50, 30);
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const MomentTable m = build_moments(Params::from_ints(a, b, ctx), 14, ctx);
      const RecurrenceTable t = build_recurrence(m, 10, ctx);
      PrecisionScope s(ctx);
      for (std::size_t n = 0; n <= 10; ++n) {
        const BigReal direct = hankel_direct(m, n, ctx);
        CHECK(direct > 0);
        CHECK(abs(exp(log_hankel(t, n)) / direct - 1) < PrecisionContext::pow10_neg(45));
      }
    }
  }
}

TEST_CASE("beta, p, r and R satisfy their defining relations") {
  const PrecisionContext ctx(50, 30);
  const RecurrenceTable t = build_recurrence(Params::from_ints(1, 1, ctx), 14, ctx);
  PrecisionScope s(ctx);
  const BigReal tol = PrecisionContext::pow10_neg(60);
  CHECK(t.beta(0) == 0);
  CHECK(t.p(0) == 0);
  CHECK(t.p(1) == 0);
  CHECK(t.small_r(0) == 0);
  BigReal running = 0;
  for (std::size_t n = 1; n <= 14; ++n) {
    CHECK(t.beta(n) > 0);
    CHECK(abs(t.beta(n) - t.h(n) / t.h(n - 1)) < tol * t.beta(n));
    // p(n) = -(beta_1 + ... + beta_{n-1})
    CHECK(abs(t.p(n) + running) < tol * (1 + abs(running)));
    running += t.beta(n);
    // r_n = beta_n (beta_{n-1} + beta_n + beta_{n+1}) for an even weight
    if (n < 14) {
      const BigReal r = t.beta(n) * (t.beta(n - 1) + t.beta(n) + t.beta(n + 1));
      CHECK(abs(t.small_r(n) - r) < tol * r);
    }
  }
  const BigReal lz = partition_function_log(t, 5);
  CHECK(abs(lz - log(boost::math::factorial<BigReal>(5)) - log_hankel(t, 5)) < tol);
}

TEST_CASE("extra guard digits leave beta unchanged to the target") {
  const PrecisionContext lo = PrecisionContext::for_order(50, 30);
  const PrecisionContext hi = lo.with_extra_guard(20);
  const Params pl = Params::from_ints(1, -1, lo);
  const Params ph = Params::from_ints(1, -1, hi);
  const RecurrenceTable a = build_recurrence(pl, 30, lo);
  const RecurrenceTable b = build_recurrence(ph, 30, hi);
  PrecisionScope s(hi);
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(abs(a.beta(n) / b.beta(n) - 1) < PrecisionContext::pow10_neg(50));
  }
}

TEST_CASE("too few guard digits are reported, not silently wrong") {
  // Conditioning costs about one digit per index; a 10-digit guard cannot
  // carry a table this deep at a 15-digit target.
  const PrecisionContext thin(15, 10);
  const Params p = Params::from_ints(0, 0, thin);
  CHECK_THROWS_AS(build_recurrence(p, 80, thin), PrecisionExhausted);
}

TEST_CASE("contracts") {
  const PrecisionContext ctx(30, 20);
  const MomentTable m = build_moments(Params::from_ints(0, 0, ctx), 6, ctx);
  CHECK_THROWS(build_recurrence(m, 5, ctx));
  const RecurrenceTable t = build_recurrence(m, 4, ctx);
  CHECK_THROWS_AS(t.beta(5), std::out_of_range);
  CHECK_THROWS(log_hankel(t, 7));
  CHECK_THROWS(hankel_direct(m, 13, ctx));
  PrecisionScope s(ctx);
  CHECK(hankel_direct(m, 0, ctx) == 1);
}
