#ifndef SEXTIC_ORTHOPOLY_HPP
#define SEXTIC_ORTHOPOLY_HPP

#include "sextic/moments.hpp"
#include "sextic/numerics.hpp"

#include <vector>

namespace sextic {

/// Monic orthogonal polynomials P_0..P_N for the sextic weight together with
///   beta_n = h_n / h_{n-1}        (beta_0 = 0)
///   h_n    = <P_n, P_n>
///   p_n    = coefficient of x^{n-2} in P_n   (p_0 = p_1 = 0)
///   r_n    = <y^3 P_n, P_{n-1}> / h_{n-1}     (r_0 = 0)
///   R_n    = <y^4 P_n, P_n> / h_n
/// where <f, g> is the moment functional. r and R come from the inner
/// products, not from their closed forms in beta.
class RecurrenceTable {
 public:
  const Params& params() const noexcept { return params_; }
  const PrecisionContext& context() const noexcept { return ctx_; }
  std::size_t max_index() const noexcept { return polys_.size() - 1; }

  const BigReal& beta(std::size_t n) const { return beta_.at(n); }
  const BigReal& h(std::size_t n) const { return h_.at(n); }
  const BigReal& p(std::size_t n) const { return p_.at(n); }
  const BigReal& small_r(std::size_t n) const { return small_r_.at(n); }
  const BigReal& big_r(std::size_t n) const { return big_r_.at(n); }
  const Polynomial& poly(std::size_t n) const { return polys_.at(n); }

  const std::vector<BigReal>& betas() const noexcept { return beta_; }

 private:
  friend RecurrenceTable build_recurrence(const MomentTable&, std::size_t, const PrecisionContext&);

  Params params_;
  PrecisionContext ctx_;
  std::vector<BigReal> beta_, h_, p_, small_r_, big_r_;
  std::vector<Polynomial> polys_;
};

/// Three-term recurrence in coefficient space against the moment table.
/// Needs moments up to order 2N + 4. Throws PrecisionExhausted when some h_n
/// comes out non-positive.
RecurrenceTable build_recurrence(const MomentTable& moments, std::size_t N,
                                 const PrecisionContext& ctx);

/// Moments + recurrence in one call, sizing the moment table for N.
RecurrenceTable build_recurrence(const Params& params, std::size_t N, const PrecisionContext& ctx);

/// <f, g> = sum_ij f_i g_j mu_{i+j+shift}.
BigReal moment_inner_product(const MomentTable& moments, const Polynomial& f, const Polynomial& g,
                             std::size_t shift = 0);

/// det(mu_{i+j})_{0<=i,j<n} by LU with partial pivoting. Oracle use, n <= 12.
BigReal hankel_direct(const MomentTable& moments, std::size_t n, const PrecisionContext& ctx);

/// ln D_n = sum_{j<n} ln h_j, with ln D_0 = 0.
BigReal log_hankel(const RecurrenceTable& table, std::size_t n);

/// ln Z_n = ln n! + ln D_n.
BigReal partition_function_log(const RecurrenceTable& table, std::size_t n);

}  // namespace sextic

#endif  // SEXTIC_ORTHOPOLY_HPP
