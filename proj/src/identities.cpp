#include "sextic/identities.hpp"

#include <algorithm>
#include <stdexcept>

namespace sextic {

namespace {

// beta_k with the conventions beta_0 = 0 and beta_{-1} absent. beta_{-1} only
// ever appears multiplied by beta_0, so reading it as zero is exact.
BigReal beta_at(const RecurrenceTable& t, long k) {
  return k <= 0 ? BigReal(0) : t.beta(static_cast<std::size_t>(k));
}

void require_range(const RecurrenceTable& t, std::size_t n, std::size_t lo, const char* what) {
  const std::size_t N = t.max_index();
  if (n < lo || n + 2 > N) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(n) +
                            " outside [" + std::to_string(lo) + ", " +
                            std::to_string(N >= 2 ? N - 2 : 0) + "]");
  }
}

// Sum of signed terms that should vanish, remembering the largest magnitude.
class ScalarIdentity {
 public:
  ScalarIdentity& lhs(const BigReal& v) { return add(v, 1); }
  ScalarIdentity& rhs(const BigReal& v) { return add(v, -1); }

  BigReal abs_residual() const { return abs(sum_); }
  BigReal rel_residual() const { return scale_ == 0 ? abs(sum_) : abs(sum_) / scale_; }

 private:
  ScalarIdentity& add(const BigReal& v, int sign) {
    sum_ += sign > 0 ? v : BigReal(-v);
    const BigReal a = abs(v);
    if (a > scale_) scale_ = a;
    return *this;
  }
  BigReal sum_{0};
  BigReal scale_{0};
};

ResidualReport make_report(std::string name, std::size_t n, BigReal abs_res, BigReal rel_res,
                           const BigReal& tol) {
  ResidualReport r;
  r.check_name = std::move(name);
  r.n_first = r.n_last = r.worst_n = n;
  r.pass = rel_res < tol;
  r.max_abs_residual = std::move(abs_res);
  r.max_rel_residual = std::move(rel_res);
  return r;
}

BigReal resolve_tol(const std::optional<BigReal>& tol, const PrecisionContext& ctx) {
  return tol ? *tol : default_tolerance(ctx);
}

BigReal max_of(std::initializer_list<BigReal> values) {
  BigReal m(0);
  for (const auto& v : values)
    if (v > m) m = v;
  return m;
}

}  // namespace

Polynomial potential_polynomial(const Params& params) {
  return Polynomial{BigReal(0), BigReal(0), params.t1, BigReal(0), params.t2, BigReal(0), BigReal(1)};
}

BigReal default_tolerance(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return PrecisionContext::pow10_neg(static_cast<int>(ctx.target_digits()) - 15);
}

void ResidualReport::absorb(const ResidualReport& other) {
  if (check_name.empty()) {
    *this = other;
    return;
  }
  n_first = std::min(n_first, other.n_first);
  n_last = std::max(n_last, other.n_last);
  if (other.max_abs_residual > max_abs_residual) max_abs_residual = other.max_abs_residual;
  if (other.max_rel_residual > max_rel_residual) {
    max_rel_residual = other.max_rel_residual;
    worst_n = other.worst_n;
  }
  pass = pass && other.pass;
}

LadderCoefficients ladder_coeffs(const RecurrenceTable& table, std::size_t n,
                                 LadderVariant variant) {
  require_range(table, n, 0, "ladder_coeffs");
  PrecisionScope scope(table.context());
  const BigReal& t1 = table.params().t1;
  const BigReal& t2 = table.params().t2;
  const long k = static_cast<long>(n);
  const BigReal bm1 = beta_at(table, k - 1);
  const BigReal b0 = beta_at(table, k);
  const BigReal bp1 = beta_at(table, k + 1);
  const BigReal bp2 = beta_at(table, k + 2);

  BigReal big_r;
  BigReal b_linear;  // coefficient of x in B_n
  if (variant == LadderVariant::beta_form) {
    big_r = bm1 * b0 + (b0 + bp1) * (b0 + bp1) + bp1 * bp2;
    b_linear = 2 * b0 * (2 * t2 + 3 * bm1 + 3 * b0 + 3 * bp1);
  } else {
    big_r = table.big_r(n);
    b_linear = 2 * (2 * t2 * b0 + 3 * table.small_r(n));
  }

  LadderCoefficients lc;
  lc.n = n;
  lc.A = Polynomial{2 * t1 + 4 * t2 * (b0 + bp1) + 6 * big_r, BigReal(0),
                    2 * (2 * t2 + 3 * b0 + 3 * bp1), BigReal(0), BigReal(6)};
  lc.B = Polynomial{BigReal(0), b_linear, BigReal(0), 6 * b0};
  return lc;
}

ResidualReport verify_ladder(const RecurrenceTable& table, std::size_t n, std::optional<BigReal> tol) {
  require_range(table, n, 1, "verify_ladder");
  PrecisionScope scope(table.context());
  const BigReal tolerance = resolve_tol(tol, table.context());
  const auto cur = ladder_coeffs(table, n);
  const auto prev = ladder_coeffs(table, n - 1);
  const Polynomial& Pn = table.poly(n);
  const Polynomial& Pm = table.poly(n - 1);
  const Polynomial vprime = potential_polynomial(table.params()).derivative();

  // (d/dx + B_n) P_n = beta_n A_n P_{n-1}
  const Polynomial l1 = Pn.derivative();
  const Polynomial l2 = cur.B * Pn;
  const Polynomial l3 = table.beta(n) * (cur.A * Pm);
  const Polynomial lower = l1 + l2 - l3;
  const BigReal lower_scale = max_of({l1.max_abs_coeff(), l2.max_abs_coeff(), l3.max_abs_coeff()});

  // (d/dx - B_n - v') P_{n-1} = -A_{n-1} P_n
  const Polynomial r1 = Pm.derivative();
  const Polynomial r2 = (cur.B + vprime) * Pm;
  const Polynomial r3 = prev.A * Pn;
  const Polynomial raise = r1 - r2 + r3;
  const BigReal raise_scale = max_of({r1.max_abs_coeff(), r2.max_abs_coeff(), r3.max_abs_coeff()});

  const BigReal lower_abs = lower.max_abs_coeff();
  const BigReal raise_abs = raise.max_abs_coeff();
  return make_report("ladder", n, max_of({lower_abs, raise_abs}),
                     max_of({lower_abs / lower_scale, raise_abs / raise_scale}), tolerance);
}

std::vector<CompatibilityResidual> compatibility_residuals(const RecurrenceTable& table,
                                                           std::size_t n) {
  require_range(table, n, 2, "verify_compatibility");
  PrecisionScope scope(table.context());
  const BigReal& t1 = table.params().t1;
  const BigReal& t2 = table.params().t2;
  const BigReal nn(static_cast<unsigned long>(n));
  const BigReal& bm1 = table.beta(n - 1);
  const BigReal& b0 = table.beta(n);
  const BigReal& bp1 = table.beta(n + 1);
  const BigReal& rn = table.small_r(n);
  const BigReal& Rn = table.big_r(n);
  const BigReal& Rm = table.big_r(n - 1);
  const BigReal three_sum = bm1 + b0 + bp1;
  const BigReal lower_pair = bm1 + b0;
  const BigReal upper_pair = b0 + bp1;

  // sum_{j<n} (beta_j + beta_{j+1}) through the telescoped p(n), p(n+1)
  const BigReal beta_pair_sum = -table.p(n) - table.p(n + 1);
  BigReal sum_big_r(0);
  for (std::size_t j = 0; j < n; ++j) sum_big_r += table.big_r(j);

  std::vector<CompatibilityResidual> out;
  auto push = [&out](const char* name, const ScalarIdentity& id) {
    out.push_back({name, id.abs_residual(), id.rel_residual()});
  };

  ScalarIdentity s1;
  s1.lhs(Rn).rhs(rn).rhs(table.small_r(n + 1));
  push("R_n=r_n+r_{n+1}", s1);

  ScalarIdentity x6;
  x6.lhs(rn).rhs(b0 * three_sum);
  push("x^6", x6);

  ScalarIdentity x4;
  x4.lhs(nn).lhs(-2 * t1 * b0).lhs(4 * t2 * rn).lhs(12 * b0 * rn);
  x4.rhs(6 * b0 * (Rn + Rm)).rhs(8 * t2 * b0 * three_sum).rhs(6 * b0 * lower_pair * upper_pair);
  push("x^4", x4);

  ScalarIdentity x2;
  x2.lhs(2 * nn * t2).lhs(6 * t1 * rn).lhs(18 * rn * rn).lhs(24 * t2 * b0 * rn).lhs(3 * beta_pair_sum);
  x2.rhs(4 * t1 * t2 * b0)
      .rhs(6 * t1 * b0 * b0)
      .rhs(12 * t2 * b0 * (Rn + Rm))
      .rhs(18 * b0 * lower_pair * Rn)
      .rhs(18 * b0 * upper_pair * Rm)
      .rhs(2 * (3 * t1 + 4 * t2 * t2) * b0 * three_sum)
      .rhs(24 * t2 * b0 * lower_pair * upper_pair);
  push("x^2", x2);

  ScalarIdentity x0;
  x0.lhs(nn * t1).lhs(3 * sum_big_r).lhs(2 * t2 * beta_pair_sum);
  x0.rhs(2 * b0 * (t1 + 3 * Rm + 2 * t2 * lower_pair) * (t1 + 3 * Rn + 2 * t2 * upper_pair));
  push("x^0", x0);

  return out;
}

ResidualReport verify_compatibility(const RecurrenceTable& table, std::size_t n,
                                    std::optional<BigReal> tol) {
  const auto residuals = compatibility_residuals(table, n);
  PrecisionScope scope(table.context());
  BigReal worst_abs(0), worst_rel(0);
  for (const auto& r : residuals) {
    if (r.abs_residual > worst_abs) worst_abs = r.abs_residual;
    if (r.rel_residual > worst_rel) worst_rel = r.rel_residual;
  }
  return make_report("compat", n, worst_abs, worst_rel, resolve_tol(tol, table.context()));
}

BigReal string_equation_lhs(const RecurrenceTable& table, std::size_t n) {
  if (n < 1 || n + 2 > table.max_index()) throw std::out_of_range("string_equation_lhs index");
  PrecisionScope scope(table.context());
  const BigReal& t1 = table.params().t1;
  const BigReal& t2 = table.params().t2;
  const long k = static_cast<long>(n);
  const BigReal bm2 = beta_at(table, k - 2), bm1 = beta_at(table, k - 1), b0 = beta_at(table, k),
                bp1 = beta_at(table, k + 1), bp2 = beta_at(table, k + 2);
  const BigReal quartic = bm2 * bm1 + bm1 * bm1 + 2 * bm1 * b0 + bm1 * bp1 + b0 * b0 +
                          2 * b0 * bp1 + bp1 * bp1 + bp1 * bp2;
  return 6 * b0 * quartic + 4 * t2 * b0 * (bm1 + b0 + bp1) + 2 * t1 * b0;
}

ResidualReport verify_dpainleve(const RecurrenceTable& table, std::size_t n,
                                std::optional<BigReal> tol) {
  const BigReal lhs = string_equation_lhs(table, n);
  PrecisionScope scope(table.context());
  const BigReal nn(static_cast<unsigned long>(n));
  const BigReal abs_res = abs(lhs - nn);
  return make_report("dpi", n, abs_res, abs_res / nn, resolve_tol(tol, table.context()));
}

Polynomial ode_residual_polynomial(const RecurrenceTable& table, std::size_t n) {
  require_range(table, n, 1, "verify_ode");
  PrecisionScope scope(table.context());
  const auto cur = ladder_coeffs(table, n);
  const auto prev = ladder_coeffs(table, n - 1);
  const Polynomial& P = table.poly(n);
  const Polynomial vp = potential_polynomial(table.params()).derivative();
  const Polynomial& A = cur.A;
  const Polynomial& B = cur.B;
  const Polynomial dA = A.derivative();
  const Polynomial dB = B.derivative();

  const Polynomial zeroth = dB * A - B * B * A - vp * B * A +
                            table.beta(n) * (A * A * prev.A) - dA * B;
  return A * P.derivative().derivative() - (vp * A + dA) * P.derivative() + zeroth * P;
}

ResidualReport verify_ode(const RecurrenceTable& table, std::size_t n, std::optional<BigReal> tol) {
  const Polynomial residual = ode_residual_polynomial(table, n);
  PrecisionScope scope(table.context());
  const auto cur = ladder_coeffs(table, n);
  const auto prev = ladder_coeffs(table, n - 1);
  const BigReal scale =
      (table.beta(n) * (cur.A * cur.A * prev.A * table.poly(n))).max_abs_coeff();
  const BigReal abs_res = residual.max_abs_coeff();
  return make_report("ode", n, abs_res, abs_res / scale, resolve_tol(tol, table.context()));
}

BigReal p_closed_form(const RecurrenceTable& table, std::size_t n) {
  if (n < 1 || n + 2 > table.max_index()) throw std::out_of_range("p_closed_form index");
  PrecisionScope scope(table.context());
  const BigReal& t2 = table.params().t2;
  const long k = static_cast<long>(n);
  const BigReal bm2 = beta_at(table, k - 2), bm1 = beta_at(table, k - 1), b0 = beta_at(table, k),
                bp1 = beta_at(table, k + 1), bp2 = beta_at(table, k + 2);
  const BigReal outer = bm1 * bp1;
  return b0 / 2 *
         (1 - BigReal(static_cast<unsigned long>(n)) - 4 * t2 * outer -
          6 * outer * (bm2 + bm1 + b0 + bp1 + bp2));
}

ResidualReport verify_p_formula(const RecurrenceTable& table, std::size_t n,
                                std::optional<BigReal> tol) {
  const BigReal closed = p_closed_form(table, n);
  PrecisionScope scope(table.context());
  ScalarIdentity id;
  id.lhs(table.p(n)).rhs(closed);
  // n beta_n / 2 is the largest term inside the bracket.
  const BigReal scale = max_of({abs(table.p(n)), abs(closed),
                               table.beta(n) * static_cast<unsigned long>(n)});
  const BigReal abs_res = id.abs_residual();
  return make_report("pform", n, abs_res, abs_res / scale, resolve_tol(tol, table.context()));
}

BigReal t2_derivative_closed_form(const RecurrenceTable& table, std::size_t n) {
  if (n < 1 || n + 2 > table.max_index()) throw std::out_of_range("t2_derivative_closed_form index");
  PrecisionScope scope(table.context());
  const BigReal& t1 = table.params().t1;
  const BigReal& t2 = table.params().t2;
  const long k = static_cast<long>(n);
  const BigReal bm2 = beta_at(table, k - 2), bm1 = beta_at(table, k - 1), b0 = beta_at(table, k),
                bp1 = beta_at(table, k + 1), bp2 = beta_at(table, k + 2);
  const BigReal s0 = bm1 + b0 + bp1;
  return 2 * t1 * bm1 * b0 * bp1 - 2 * t1 * b0 * b0 * s0 - 4 * t2 * b0 * b0 * s0 * s0 -
         6 * b0 * (bm1 * (bm2 + bm1 + b0) + b0 * s0) * (b0 * s0 + bp1 * (b0 + bp1 + bp2));
}

namespace {

BigReal minus_sum_big_r(const RecurrenceTable& table, std::size_t n) {
  BigReal s(0);
  for (std::size_t j = 0; j < n; ++j) s -= table.big_r(j);
  return s;
}

void require_difference_precision(const BigReal& step, const PrecisionContext& ctx) {
  // Rounding in ln D_n (~10^-(working-5)) divided by the step has to stay
  // well below the O(step^2) truncation being tested.
  const BigReal rounding = PrecisionContext::pow10_neg(static_cast<int>(ctx.working_digits()) - 5);
  if (!(rounding / step < step * step)) {
    throw PrecisionExhausted("finite-difference step too small for the working precision",
                             2 * ctx.guard_digits());
  }
}

T2DerivativeCheck compare_t2_derivative(const RecurrenceTable& base, const RecurrenceTable& plus,
                                        const RecurrenceTable& minus, std::size_t n,
                                        const BigReal& step, const BigReal& tol) {
  T2DerivativeCheck c;
  c.central_difference = (log_hankel(plus, n) - log_hankel(minus, n)) / (2 * step);
  c.minus_sum_r = minus_sum_big_r(base, n);
  c.closed_form = t2_derivative_closed_form(base, n);
  const BigReal scale = max_of({abs(c.minus_sum_r), BigReal(1)});
  const BigReal d1 = abs(c.central_difference - c.minus_sum_r);
  const BigReal d2 = abs(c.central_difference - c.closed_form);
  const BigReal d3 = abs(c.minus_sum_r - c.closed_form);
  const BigReal worst = max_of({d1, d2, d3});
  c.report = make_report("dt2", n, worst, worst / scale, tol);
  return c;
}

Params shifted_t2(const Params& p, const BigReal& delta) { return Params{p.t1, p.t2 + delta}; }

}  // namespace

T2DerivativeCheck verify_t2_derivative(const Params& params, std::size_t n, const BigReal& step,
                                       const PrecisionContext& ctx, const BigReal& tol) {
  if (n < 1) throw std::out_of_range("verify_t2_derivative needs n >= 1");
  PrecisionScope scope(ctx);
  require_difference_precision(step, ctx);
  const std::size_t N = std::max<std::size_t>(n + 2, 3);
  const RecurrenceTable base = build_recurrence(params, N, ctx);
  const RecurrenceTable plus = build_recurrence(shifted_t2(params, step), N, ctx);
  const RecurrenceTable minus = build_recurrence(shifted_t2(params, -step), N, ctx);
  return compare_t2_derivative(base, plus, minus, n, step, tol);
}

ResidualReport run_check(const std::string& name, const RecurrenceTable& table,
                         std::optional<BigReal> tol) {
  const std::size_t N = table.max_index();
  if (N < 4) throw std::out_of_range("verification needs N >= 4");
  PrecisionScope scope(table.context());

  ResidualReport folded;
  if (name == "dt2") {
    const PrecisionContext& ctx = table.context();
    const BigReal step = parse_decimal("1e-10");
    const BigReal tolerance = tol ? *tol : parse_decimal("1e-18");
    require_difference_precision(step, ctx);
    const RecurrenceTable plus = build_recurrence(shifted_t2(table.params(), step), N, ctx);
    const RecurrenceTable minus = build_recurrence(shifted_t2(table.params(), -step), N, ctx);
    for (std::size_t n = 2; n + 2 <= N; ++n) {
      folded.absorb(compare_t2_derivative(table, plus, minus, n, step, tolerance).report);
    }
    return folded;
  }

  ResidualReport (*fn)(const RecurrenceTable&, std::size_t, std::optional<BigReal>) = nullptr;
  if (name == "dpi") fn = verify_dpainleve;
  else if (name == "ladder") fn = verify_ladder;
  else if (name == "ode") fn = verify_ode;
  else if (name == "compat") fn = verify_compatibility;
  else if (name == "pform") fn = verify_p_formula;
  else throw std::invalid_argument("unknown check '" + name + "'");

  for (std::size_t n = 2; n + 2 <= N; ++n) folded.absorb(fn(table, n, tol));
  return folded;
}

}  // namespace sextic
