#include "sextic/orthopoly.hpp"

#include <stdexcept>
#include <utility>

namespace sextic {

BigReal moment_inner_product(const MomentTable& moments, const Polynomial& f, const Polynomial& g,
                             std::size_t shift) {
  const auto& mu = moments.values();
  if (f.size() + g.size() + shift > mu.size() + 1) {
    throw std::out_of_range("moment table too short for inner product");
  }
  BigReal total(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const BigReal& fi = f.coeffs()[i];
    if (fi == 0) continue;
    BigReal row(0);
    for (std::size_t j = (i + shift) % 2; j < g.size(); j += 2) {
      row += g.coeffs()[j] * mu[i + j + shift];
    }
    total += fi * row;
  }
  return total;
}

RecurrenceTable build_recurrence(const MomentTable& moments, std::size_t N,
                                 const PrecisionContext& ctx) {
  if (N < 1) throw std::invalid_argument("build_recurrence needs N >= 1");
  if (moments.max_order() < 2 * N + 4) {
    throw std::out_of_range("moment table must reach order 2N+4 = " + std::to_string(2 * N + 4));
  }
  PrecisionScope scope(ctx);

  RecurrenceTable t;
  t.params_ = moments.params();
  t.ctx_ = ctx;
  t.polys_.reserve(N + 1);
  t.polys_.push_back(Polynomial{BigReal(1)});
  t.polys_.push_back(Polynomial{BigReal(0), BigReal(1)});

  auto exhausted = [&](std::size_t n) {
    return PrecisionExhausted("h_" + std::to_string(n) + " is not positive at " +
                                  std::to_string(ctx.working_digits()) +
                                  " working digits; retry with more guard digits",
                              2 * ctx.guard_digits());
  };

  t.h_.push_back(moments[0]);
  t.beta_.push_back(BigReal(0));
  if (!(t.h_[0] > 0)) throw exhausted(0);

  for (std::size_t n = 1; n <= N; ++n) {
    if (n >= 2) {
      Polynomial next = t.polys_[n - 1].shifted(1) - t.beta_[n - 1] * t.polys_[n - 2];
      t.polys_.push_back(std::move(next));
    }
    BigReal hn = moment_inner_product(moments, t.polys_[n], t.polys_[n]);
    if (!(hn > 0)) throw exhausted(n);
    t.beta_.push_back(hn / t.h_[n - 1]);
    t.h_.push_back(std::move(hn));
  }

  t.p_.assign(N + 1, BigReal(0));
  for (std::size_t n = 2; n <= N; ++n) t.p_[n] = t.polys_[n].coeffs()[n - 2];

  t.small_r_.assign(N + 1, BigReal(0));
  t.big_r_.assign(N + 1, BigReal(0));
  for (std::size_t n = 0; n <= N; ++n) {
    t.big_r_[n] = moment_inner_product(moments, t.polys_[n], t.polys_[n], 4) / t.h_[n];
    if (n >= 1) {
      t.small_r_[n] = moment_inner_product(moments, t.polys_[n], t.polys_[n - 1], 3) / t.h_[n - 1];
    }
  }
  return t;
}

RecurrenceTable build_recurrence(const Params& params, std::size_t N, const PrecisionContext& ctx) {
  const MomentTable moments = build_moments(params, N + 2, ctx);
  return build_recurrence(moments, N, ctx);
}

BigReal hankel_direct(const MomentTable& moments, std::size_t n, const PrecisionContext& ctx) {
  if (n > 12) throw std::out_of_range("hankel_direct is an oracle for n <= 12");
  if (n == 0) return BigReal(1);
  if (moments.max_order() < 2 * n - 2) throw std::out_of_range("moment table too short");
  PrecisionScope scope(ctx);

  std::vector<std::vector<BigReal>> a(n, std::vector<BigReal>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = moments[i + j];

  const BigReal tiny = PrecisionContext::pow10_neg(static_cast<int>(ctx.working_digits()) - 5);
  BigReal det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i][k]) > abs(a[pivot][k])) pivot = i;
    if (abs(a[pivot][k]) <= tiny * abs(a[0][0])) {
      throw PrecisionExhausted("Hankel matrix singular to working precision", 2 * ctx.guard_digits());
    }
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const BigReal factor = a[i][k] / a[k][k];
      if (factor == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
    }
  }
  return det;
}

BigReal log_hankel(const RecurrenceTable& table, std::size_t n) {
  if (n > table.max_index() + 1) throw std::out_of_range("log_hankel index beyond table");
  PrecisionScope scope(table.context());
  BigReal total(0);
  for (std::size_t j = 0; j < n; ++j) total += log(table.h(j));
  return total;
}

BigReal partition_function_log(const RecurrenceTable& table, std::size_t n) {
  PrecisionScope scope(table.context());
  BigReal total = log_hankel(table, n);
  for (std::size_t k = 2; k <= n; ++k) total += log(BigReal(static_cast<unsigned long>(k)));
  return total;
}

}  // namespace sextic
