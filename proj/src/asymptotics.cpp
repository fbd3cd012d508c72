#include "sextic/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace sextic {

namespace {

BigReal real_cbrt(const BigReal& x) {
  if (x == 0) return BigReal(0);
  return x > 0 ? cbrt(x) : BigReal(-cbrt(-x));
}

BigReal cubic(const BigReal& u, const Params& p, const BigReal& n) {
  return ((15 * u + 12 * p.t2) * u + 8 * p.t1) * u - 16 * n;
}

BigReal cubic_slope(const BigReal& u, const Params& p) {
  return (45 * u + 24 * p.t2) * u + 8 * p.t1;
}

// Newton on the cubic, halving the step whenever the residual would grow.
BigReal newton_polish(BigReal u, const Params& p, const BigReal& n, const PrecisionContext& ctx) {
  const BigReal eps = PrecisionContext::pow10_neg(static_cast<int>(ctx.working_digits()) - 2);
  for (int iter = 0; iter < 200; ++iter) {
    const BigReal f = cubic(u, p, n);
    const BigReal df = cubic_slope(u, p);
    if (df == 0) break;
    BigReal step = f / df;
    BigReal next = u - step;
    int halvings = 0;
    while (abs(cubic(next, p, n)) > abs(f) && halvings < 60) {
      step /= 2;
      next = u - step;
      ++halvings;
    }
    const bool done = abs(next - u) <= eps * abs(next);
    u = next;
    if (done) break;
  }
  return u;
}

// Largest real root of the monic depressed form when all three roots are real.
BigReal trigonometric_root(const Params& p, const BigReal& n) {
  const BigReal a = 12 * p.t2 / 15;
  const BigReal b = 8 * p.t1 / 15;
  const BigReal c = -16 * n / 15;
  const BigReal pp = b - a * a / 3;
  const BigReal qq = 2 * a * a * a / 27 - a * b / 3 + c;
  const BigReal pi = boost::math::constants::pi<BigReal>();
  if (!(pp < 0)) {
    // One real root; reached only when rounding flipped the radicand sign.
    const BigReal disc = qq * qq / 4 + pp * pp * pp / 27;
    const BigReal s = sqrt(disc > 0 ? disc : BigReal(0));
    return real_cbrt(-qq / 2 + s) + real_cbrt(-qq / 2 - s) - a / 3;
  }
  const BigReal m = 2 * sqrt(-pp / 3);
  BigReal arg = 3 * qq / (pp * m);
  if (arg > 1) arg = 1;
  if (arg < -1) arg = -1;
  const BigReal theta = acos(arg) / 3;
  BigReal best = m * cos(theta) - a / 3;
  for (int k = 1; k < 3; ++k) {
    const BigReal root = m * cos(theta - 2 * pi * k / 3) - a / 3;
    if (root > best) best = root;
  }
  return best;
}

BigReal ratio(long num, long den) { return BigReal(num) / BigReal(den); }

// An error under 10^-target relative to the value cannot be told apart from
// zero, and fitting an order to rounding noise is meaningless.
bool below_resolution(const DecayRow& row, const PrecisionContext& ctx) {
  const BigReal scale = abs(row.exact) > 1 ? abs(row.exact) : BigReal(1);
  return row.error <= PrecisionContext::pow10_neg(static_cast<int>(ctx.target_digits())) * scale;
}

}  // namespace

BigReal endpoint_residual(const EndpointSolution& sol) {
  return abs(cubic(sol.u, sol.params, sol.n_value)) / (16 * sol.n_value);
}

EndpointSolution solve_endpoint(const BigReal& n, const Params& params, const PrecisionContext& ctx) {
  if (!(n > 0)) throw std::invalid_argument("solve_endpoint needs n > 0");
  PrecisionScope scope(ctx);
  const BigReal& t1 = params.t1;
  const BigReal& t2 = params.t2;

  EndpointSolution sol;
  sol.n_value = n;
  sol.params = params;

  const BigReal radicand = 2025 * n * n - 36 * n * (4 * t2 * t2 * t2 - 15 * t1 * t2) +
                           40 * t1 * t1 * t1 - 12 * t1 * t1 * t2 * t2;
  BigReal start;
  bool have_start = false;
  if (radicand >= 0) {
    const BigReal phi = 225 * n - 8 * t2 * t2 * t2 + 30 * t1 * t2 + 5 * sqrt(radicand);
    sol.phi = phi;
    const BigReal root3 = real_cbrt(phi);
    if (root3 != 0) {
      start = BigReal(2) / 15 * (root3 - 2 * t2 + (4 * t2 * t2 - 10 * t1) / root3);
      sol.u_closed_form = start;
      have_start = true;
    }
  }
  if (!have_start) start = trigonometric_root(params, n);

  sol.u = newton_polish(start, params, n, ctx);
  if (!(sol.u > 0)) {
    throw std::logic_error("endpoint cubic produced no positive root");
  }
  sol.A = lagrange_multiplier(sol);
  return sol;
}

BigReal lagrange_multiplier(const EndpointSolution& sol) {
  const BigReal& u = sol.u;
  const Params& p = sol.params;
  return u * (5 * u * u + 6 * p.t2 * u + 8 * p.t1) / 16 - sol.n_value * log(u / 4);
}

bool is_single_cut(const Params& params) {
  if (params.t2 >= 0) return params.t1 >= 0;
  return 9 * params.t1 >= 4 * params.t2 * params.t2;
}

const char* regime_label(const Params& params) {
  return is_single_cut(params) ? "single-cut" : "out-of-single-cut";
}

Quantity parse_quantity(std::string_view name) {
  if (name == "u_quarter" || name == "u") return Quantity::u_quarter;
  if (name == "lagrange_A" || name == "A") return Quantity::lagrange_A;
  if (name == "beta") return Quantity::beta;
  if (name == "p") return Quantity::p;
  if (name == "log_hn" || name == "logh") return Quantity::log_hn;
  if (name == "log_Dn" || name == "logD") return Quantity::log_Dn;
  throw std::invalid_argument("unknown quantity '" + std::string(name) + "'");
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::u_quarter: return "u_quarter";
    case Quantity::lagrange_A: return "lagrange_A";
    case Quantity::beta: return "beta";
    case Quantity::p: return "p";
    case Quantity::log_hn: return "log_hn";
    case Quantity::log_Dn: return "log_Dn";
  }
  return "?";
}

AsymptoticModel AsymptoticModel::build(const Params& params, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  AsymptoticModel m;
  m.params_ = params;
  m.ctx_ = ctx;
  const BigReal& t1 = params.t1;
  const BigReal& t2 = params.t2;
  const BigReal t1_2 = t1 * t1, t1_3 = t1_2 * t1, t1_4 = t1_3 * t1;
  const BigReal t2_2 = t2 * t2, t2_3 = t2_2 * t2, t2_4 = t2_3 * t2, t2_5 = t2_4 * t2,
                t2_6 = t2_5 * t2, t2_8 = t2_6 * t2_2;
  const BigReal k = cbrt(BigReal(60));
  const BigReal k2 = k * k;
  const BigReal ln_k = log(k);
  const BigReal ln_2pi = log(2 * boost::math::constants::pi<BigReal>());
  m.kappa_ = k;
  m.zeta_prime_ = sextic::zeta_prime_neg1(ctx);

  auto term = [](BigReal c, int num, int den, int logp = 0) {
    return SeriesTerm{std::move(c), num, den, logp};
  };

  // Leading orders shared by u/4 and beta_n.
  const BigReal a_m1 = 1 / k;
  const BigReal a_0 = -t2 / 15;
  const BigReal a_1 = -2 * (5 * t1 - 2 * t2_2) / (15 * k2);
  const BigReal a_2 = 2 * t2 * (15 * t1 - 4 * t2_2) / (675 * k);
  const BigReal a_4 = 4 * t2 * (5 * t1 - 2 * t2_2) * (15 * t1 - 4 * t2_2) / (10125 * k2);
  const BigReal cubic_t = 1500 * t1_3 - 3600 * t1_2 * t2_2 + 1680 * t1 * t2_4 - 224 * t2_6;

  m.expansions_[Quantity::u_quarter] = Expansion{
      {term(a_m1, 1, 3), term(a_0, 0, 1), term(a_1, -1, 3), term(a_2, -2, 3), term(a_4, -4, 3),
       term(2 * (375 * t1_3 - 900 * t1_2 * t2_2 + 420 * t1 * t2_4 - 56 * t2_6) / (455625 * k), -5, 3)},
      7, 3};

  m.expansions_[Quantity::lagrange_A] = Expansion{
      {term(ratio(-1, 3), 1, 1, 1), term(ratio(1, 3) + ln_k, 1, 1), term(6 * t2 / k2, 2, 3),
       term(2 * (5 * t1 - t2_2) / (5 * k), 1, 3), term(-2 * t2 * (5 * t1 - t2_2) / 75, 0, 1),
       term(-2 * (15 * t1_2 - 12 * t1 * t2_2 + 2 * t2_4) / (45 * k2), -1, 3),
       term(2 * t2 * (375 * t1_2 - 200 * t1 * t2_2 + 28 * t2_4) / (16875 * k), -2, 3)},
      4, 3};

  m.expansions_[Quantity::beta] = Expansion{
      {term(a_m1, 1, 3), term(a_0, 0, 1), term(a_1, -1, 3), term(a_2, -2, 3), term(a_4, -4, 3),
       term((cubic_t + 50625) / (911250 * k), -5, 3), term(-t2 / 270, -2, 1)},
      7, 3};

  m.expansions_[Quantity::p] = Expansion{
      {term(-3 / (4 * k), 4, 3), term(t2 / 15, 1, 1), term((5 * t1 - 2 * t2_2) / (5 * k2), 2, 3),
       term((16 * t2_3 - 60 * t1 * t2 + 225) / (450 * k), 1, 3),
       term(-(25 * t1_2 - 30 * t1 * t2_2 + 75 * t2 + 6 * t2_4) / 2250, 0, 1),
       term((5 * t1 - 2 * t2_2) * (60 * t1 * t2 - 16 * t2_3 - 225) / (3375 * k2), -1, 3),
       term((750 * t1_3 - 1800 * t1_2 * t2_2 + 6750 * t1 * t2 + 840 * t1 * t2_4 - 1800 * t2_3 -
             112 * t2_6 + 16875) /
                (303750 * k),
            -2, 3),
       term(-t2 / 270, -1, 1)},
      4, 3};

  m.c_[0] = t2_2 * (125 * t1_2 - 50 * t1 * t2_2 + 6 * t2_4) / 9375 - t1_3 / 135 -
            log(BigReal(3)) / 12 + m.zeta_prime_;
  m.c_[1] = t2 * (21000 * t1_3 - 21000 * t1_2 * t2_2 + 6720 * t1 * t2_4 - 704 * t2_6 + 118125) /
            (354375 * k2);
  m.c_[2] = (1875 * t1_4 - 6000 * t1_3 * t2_2 + 4200 * t1_2 * t2_4 + 168750 * t1 -
             1120 * t1 * t2_6 - 50625 * t2_2 + 104 * t2_8) /
            (1518750 * k);
  m.c_[3] = -t2 * (15 * t1 - 4 * t2_2) / 2025;

  m.expansions_[Quantity::log_Dn] = Expansion{
      {term(ratio(1, 6), 2, 1, 1), term(-(1 + 2 * ln_k) / 4, 2, 1), term(-18 * t2 / (5 * k2), 5, 3),
       term(-3 * (5 * t1 - t2_2) / (10 * k), 4, 3),
       term(2 * t2 * (5 * t1 - t2_2) / 75 + ln_2pi, 1, 1),
       term((15 * t1_2 - 12 * t1 * t2_2 + 2 * t2_4) / (15 * k2), 2, 3),
       term(-2 * t2 * (375 * t1_2 - 200 * t1 * t2_2 + 28 * t2_4) / (5625 * k), 1, 3),
       term(ratio(-1, 12), 0, 1, 1), term(m.c_[0], 0, 1), term(m.c_[1], -1, 3),
       term(m.c_[2], -2, 3), term(m.c_[3], -1, 1)},
      4, 3};

  m.expansions_[Quantity::log_hn] = Expansion{
      {term(ratio(1, 3), 1, 1, 1), term(-(ratio(1, 3) + ln_k), 1, 1), term(-6 * t2 / k2, 2, 3),
       term(-2 * (5 * t1 - t2_2) / (5 * k), 1, 3), term(ratio(1, 6), 0, 1, 1),
       term(ln_2pi - ln_k / 2 + 2 * t2 * (5 * t1 - t2_2) / 75, 0, 1),
       term(2 * (15 * t1_2 - 45 * t2 - 12 * t1 * t2_2 + 2 * t2_4) / (45 * k2), -1, 3),
       term(-(750 * t1_2 * t2 - 400 * t1 * t2_3 + 5625 * t1 - 1125 * t2_2 + 56 * t2_5) / (16875 * k),
            -2, 3),
       term(ratio(-1, 36), -1, 1)},
      4, 3};

  return m;
}

BigReal eval_expansion(Quantity quantity, const BigReal& n, const AsymptoticModel& model) {
  if (!(n >= 1)) throw std::invalid_argument("eval_expansion needs n >= 1");
  PrecisionScope scope(model.context());
  const Expansion& ex = model.expansion(quantity);
  const BigReal ln_n = log(n);
  const BigReal cbrt_n = cbrt(n);
  BigReal total(0);
  for (const auto& t : ex.terms) {
    if (t.coeff == 0) continue;
    BigReal power;
    if (t.den == 3) {
      power = pow(cbrt_n, t.num);
    } else {
      power = pow(n, t.num / t.den);
    }
    BigReal v = t.coeff * power;
    for (int i = 0; i < t.log_power; ++i) v *= ln_n;
    total += v;
  }
  return total;
}

BigReal exact_value(Quantity quantity, std::size_t n, const RecurrenceTable& table) {
  PrecisionScope scope(table.context());
  switch (quantity) {
    case Quantity::beta: return table.beta(n);
    case Quantity::p: return table.p(n);
    case Quantity::log_hn: return log(table.h(n));
    case Quantity::log_Dn: return log_hankel(table, n);
    case Quantity::u_quarter:
    case Quantity::lagrange_A: {
      const auto sol = solve_endpoint(BigReal(static_cast<unsigned long>(n)), table.params(),
                                      table.context());
      return quantity == Quantity::u_quarter ? BigReal(sol.u / 4) : sol.A;
    }
  }
  throw std::invalid_argument("unknown quantity");
}

bool DecayReport::pass() const {
  bool any = false;
  for (const auto& r : rows) {
    if (r.within_tolerance) {
      any = true;
      if (!*r.within_tolerance) return false;
    } else if (r.exact_match) {
      any = true;
    }
  }
  return any;
}

DecayReport error_decay_report(Quantity quantity, const std::vector<std::size_t>& n_list,
                               const RecurrenceTable& table, const AsymptoticModel& model) {
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("n_list entries must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must be strictly increasing");
  }
  PrecisionScope scope(table.context());
  DecayReport rep;
  rep.quantity = quantity;
  rep.expected_order = model.expansion(quantity).remainder_exponent();
  rep.single_cut = is_single_cut(table.params());

  std::map<std::size_t, std::size_t> row_of;
  for (std::size_t n : n_list) {
    DecayRow row;
    row.n = n;
    row.exact = exact_value(quantity, n, table);
    row.asym = eval_expansion(quantity, BigReal(static_cast<unsigned long>(n)), model);
    row.error = abs(row.exact - row.asym);
    row_of[n] = rep.rows.size();
    rep.rows.push_back(std::move(row));
  }
  for (auto& row : rep.rows) {
    if (row.n % 2 != 0) continue;
    const auto it = row_of.find(row.n / 2);
    if (it == row_of.end()) continue;
    const DecayRow& half = rep.rows[it->second];
    if (below_resolution(half, table.context()) || below_resolution(row, table.context())) {
      row.exact_match = true;
      continue;
    }
    const double order = log2(half.error / row.error).convert_to<double>();
    row.fitted_order = order;
    row.within_tolerance = std::abs(order - rep.expected_order) <= kOrderFitWindow;
  }
  return rep;
}

BigReal zeta_prime_neg1(const PrecisionContext& ctx) {
  // ln A_G = sum_{k<=m} k ln k - (m^2/2 + m/2 + 1/12) ln m + m^2/4
  //          + sum_{j>=2} B_{2j} / ((2j)(2j-1)(2j-2) m^(2j-2))
  // The tail terms shrink like (j / (pi m))^(2j) until j ~ pi m, so taking
  // m ~ digits/2 leaves ample room to reach working accuracy.
  const PrecisionContext inner = ctx.with_extra_guard(10);
  PrecisionScope scope(inner);
  const unsigned digits = inner.working_digits();
  const unsigned long m = digits / 2 + 10;
  const BigReal mm(m);
  const BigReal tol = PrecisionContext::pow10_neg(static_cast<int>(digits));
  const BigReal two_pi = 2 * boost::math::constants::pi<BigReal>();

  BigReal sum(0);
  for (unsigned long k = 2; k <= m; ++k) {
    const BigReal kk(k);
    sum += kk * log(kk);
  }
  BigReal ln_glaisher = sum - (mm * mm / 2 + mm / 2 + BigReal(1) / 12) * log(mm) + mm * mm / 4;

  // B_{2j} = (-1)^(j+1) 2 (2j)! zeta(2j) / (2 pi)^(2j)
  BigReal factorial(2);  // (2j)! at j = 1
  BigReal two_pi_pow = two_pi * two_pi;
  BigReal m_pow(1);  // m^(2j-2) at j = 1
  for (unsigned long j = 2; j < 10 * m; ++j) {
    factorial *= BigReal((2 * j - 1) * (2 * j));
    two_pi_pow *= two_pi * two_pi;
    m_pow *= mm * mm;
    BigReal zeta;
    mpfr_zeta_ui(zeta.backend().data(), 2 * j, MPFR_RNDN);
    BigReal bernoulli = 2 * factorial * zeta / two_pi_pow;
    if (j % 2 == 0) bernoulli = -bernoulli;
    const BigReal t = bernoulli / (BigReal((2 * j) * (2 * j - 1) * (2 * j - 2)) * m_pow);
    ln_glaisher += t;
    if (abs(t) < tol) break;
  }
  const BigReal result = BigReal(1) / 12 - ln_glaisher;
  PrecisionScope outer(ctx);
  BigReal rounded;
  rounded = result;  // assignment rounds into the outer precision
  return rounded;
}

}  // namespace sextic
