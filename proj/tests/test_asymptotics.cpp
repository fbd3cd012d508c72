#include "sextic/asymptotics.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <boost/math/constants/constants.hpp>

using namespace sextic;

TEST_CASE("zeta'(-1) by two independent routes") {
  const PrecisionContext ctx(100, 30);
  const BigReal em = zeta_prime_neg1(ctx);
  const BigReal fe = oracle::zeta_prime_neg1(130);
  PrecisionScope s(ctx);
  CHECK(abs(em - fe) < PrecisionContext::pow10_neg(110));
  const BigReal literal = parse_decimal("-0.16542114370045092921391966024278064276403638033520");
  CHECK(abs(em - literal) < PrecisionContext::pow10_neg(49));
}

TEST_CASE("endpoint cubic across regimes") {
  const PrecisionContext ctx(60, 30);
  PrecisionScope s(ctx);
  for (auto [a, b] : {std::pair{0, 0}, {1, 1}, {1, -1}, {-1, 2}, {5, -3}, {-4, -4}}) {
    const Params p = Params::from_ints(a, b, ctx);
    for (const char* n : {"1", "2.5", "10", "100", "1000", "1e6"}) {
      const auto sol = solve_endpoint(parse_decimal(n), p, ctx);
      CHECK(sol.u > 0);
      CHECK_MESSAGE(endpoint_residual(sol) < PrecisionContext::pow10_neg(75), "t=", a, ",", b, " n=", n);
    }
  }
}

TEST_CASE("three real roots: the largest one is taken") {
  const PrecisionContext ctx(50, 30);
  PrecisionScope s(ctx);
  const Params p = Params::from_ints(-30, 0, ctx);
  const auto sol = solve_endpoint(BigReal(1), p, ctx);
  CHECK_FALSE(sol.phi.has_value());
  // Bisection right of the larger critical point of 15u^3 - 240u - 16.
  BigReal lo = sqrt(BigReal(240) / 45), hi(100);
  for (int i = 0; i < 300; ++i) {
    const BigReal mid = (lo + hi) / 2;
    ((15 * mid * mid - 240) * mid - 16 > 0 ? hi : lo) = mid;
  }
  CHECK(abs(sol.u - lo) < PrecisionContext::pow10_neg(70));
}

TEST_CASE("closed-form root agrees with the polished root") {
  const PrecisionContext ctx(50, 30);
  PrecisionScope s(ctx);
  const auto sol = solve_endpoint(BigReal(64), Params::from_ints(1, 1, ctx), ctx);
  REQUIRE(sol.u_closed_form.has_value());
  CHECK(abs(*sol.u_closed_form - sol.u) < PrecisionContext::pow10_neg(60));
}

TEST_CASE("Lagrange multiplier of the pure sextic") {
  const PrecisionContext ctx(50, 30);
  PrecisionScope s(ctx);
  const BigReal ln_k = log(cbrt(BigReal(60)));
  for (int n : {10, 100, 1000}) {
    const BigReal nn(n);
    const auto sol = solve_endpoint(nn, Params::from_ints(0, 0, ctx), ctx);
    const BigReal expect = -nn / 3 * log(nn) + (BigReal(1) / 3 + ln_k) * nn;
    CHECK(abs(sol.A - expect) < PrecisionContext::pow10_neg(75) * nn * log(nn));
  }
}

TEST_CASE("endpoint expansions: errors fall at the stated orders") {
  const PrecisionContext ctx(60, 30);
  for (auto [a, b] : {std::pair{0, 0}, {1, 1}, {2, -1}}) {
    const Params p = Params::from_ints(a, b, ctx);
    const AsymptoticModel model = AsymptoticModel::build(p, ctx);
    const RecurrenceTable t = build_recurrence(p, 4, ctx);
    for (Quantity q : {Quantity::u_quarter, Quantity::lagrange_A}) {
      const DecayReport r = error_decay_report(q, {20000, 40000}, t, model);
      REQUIRE(r.rows.size() == 2);
      if (r.rows[1].fitted_order) {
        CHECK_MESSAGE(r.pass(), quantity_name(q), " t=", a, ",", b, " order ", *r.rows[1].fitted_order);
      }
    }
  }
}

TEST_CASE("ln D_n expansion at t2 = 0 against the one-parameter form") {
  const PrecisionContext ctx(60, 30);
  const Params p = Params::from_ints(1, 0, ctx);
  const AsymptoticModel model = AsymptoticModel::build(p, ctx);
  PrecisionScope s(ctx);
  const BigReal n(64);
  const BigReal ours = eval_expansion(Quantity::log_Dn, n, model);
  const BigReal ref = oracle::log_dn_t2_zero(p.t1, n, oracle::zeta_prime_neg1(90));
  CHECK(abs(ours - ref) < PrecisionContext::pow10_neg(30));
  CHECK(abs(model.C2() - p.t1 * (p.t1 * p.t1 * p.t1 + 90) / (810 * model.kappa())) <
        PrecisionContext::pow10_neg(55));
  CHECK(model.C1() == 0);
  CHECK(model.C3() == 0);
}

TEST_CASE("ln h_n expansion is the difference of ln D_n expansions") {
  const PrecisionContext ctx(50, 30);
  const AsymptoticModel model = AsymptoticModel::build(Params::from_ints(1, 1, ctx), ctx);
  PrecisionScope s(ctx);
  auto gap = [&](long n) {
    const BigReal nn(n);
    return abs(eval_expansion(Quantity::log_Dn, nn + 1, model) -
               eval_expansion(Quantity::log_Dn, nn, model) - eval_expansion(Quantity::log_hn, nn, model));
  };
  // Both sides are truncated at O(n^-4/3), so the gap must shrink at least that fast.
  const double order = log2(gap(10000) / gap(20000)).convert_to<double>();
  CHECK(order > 4.0 / 3 - 0.1);
}

TEST_CASE("exact and asymptotic beta agree at moderate n") {
  const PrecisionContext ctx = PrecisionContext::for_order(50, 66);
  const Params p = Params::from_ints(0, 0, ctx);
  const RecurrenceTable t = build_recurrence(p, 66, ctx);
  const AsymptoticModel model = AsymptoticModel::build(p, ctx);
  PrecisionScope s(ctx);
  const BigReal e64 = abs(exact_value(Quantity::beta, 64, t) - eval_expansion(Quantity::beta, BigReal(64), model));
  CHECK(e64 < parse_decimal("1e-8"));
  const BigReal d64 =
      abs(exact_value(Quantity::log_Dn, 64, t) - eval_expansion(Quantity::log_Dn, BigReal(64), model));
  CHECK(d64 < parse_decimal("1e-4"));
}

TEST_CASE("regime labels and quantity names") {
  const PrecisionContext ctx(30, 20);
  CHECK(is_single_cut(Params::from_ints(0, 0, ctx)));
  CHECK(is_single_cut(Params::from_ints(1, -1, ctx)));
  CHECK_FALSE(is_single_cut(Params::from_ints(-1, 2, ctx)));
  CHECK_FALSE(is_single_cut(Params::from_ints(1, -2, ctx)));
  CHECK(std::string(regime_label(Params::from_ints(-1, 0, ctx))) == "out-of-single-cut");
  for (Quantity q : {Quantity::u_quarter, Quantity::lagrange_A, Quantity::beta, Quantity::p, Quantity::log_hn,
                     Quantity::log_Dn}) {
    CHECK(parse_quantity(quantity_name(q)) == q);
  }
  CHECK(parse_quantity("logD") == Quantity::log_Dn);
  CHECK_THROWS_AS(parse_quantity("gamma"), std::invalid_argument);
  const AsymptoticModel m = AsymptoticModel::build(Params::from_ints(0, 0, ctx), ctx);
  PrecisionScope s(ctx);
  CHECK(abs(pow(m.kappa(), 3) - 60) < PrecisionContext::pow10_neg(45));
  CHECK_THROWS(eval_expansion(Quantity::beta, BigReal(0), m));
}
