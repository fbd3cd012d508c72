#ifndef SEXTIC_MOMENTS_HPP
#define SEXTIC_MOMENTS_HPP

#include "sextic/numerics.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace sextic {

/// Deformation parameters of the weight w(x) = exp(-x^6 - t2 x^4 - t1 x^2).
/// Any real pair is admissible: the x^6 term keeps every moment finite.
struct Params {
  BigReal t1;
  BigReal t2;

  /// Parses both values at ctx's working precision, never through a double.
  static Params parse(std::string_view t1, std::string_view t2, const PrecisionContext& ctx);
  static Params from_ints(long t1, long t2, const PrecisionContext& ctx);
};

/// Potential v(x) = x^6 + t2 x^4 + t1 x^2 evaluated at a point.
BigReal potential(const Params& params, const BigReal& x);

/// Abscissa beyond which exp(-v(x)) is below working accuracy:
/// (working_digits ln 10 + |t1| + |t2| + 10)^(1/6) + 2.
BigReal tail_cutoff(const Params& params, const PrecisionContext& ctx);

/// Even-weight moments mu_0 .. mu_max_order. Odd entries are stored as exact
/// zeros so Hankel assembly can index mu[i + j] directly.
class MomentTable {
 public:
  MomentTable(Params params, std::vector<BigReal> mu, PrecisionContext ctx);

  const Params& params() const noexcept { return params_; }
  const PrecisionContext& context() const noexcept { return ctx_; }
  std::size_t max_order() const noexcept { return mu_.size() - 1; }
  const BigReal& operator[](std::size_t j) const { return mu_.at(j); }
  const std::vector<BigReal>& values() const noexcept { return mu_; }

 private:
  Params params_;
  std::vector<BigReal> mu_;
  PrecisionContext ctx_;
};

/// mu_k = 2 * int_0^inf x^k w(x) dx for k = 0, 2, 4 by tanh-sinh quadrature.
std::array<BigReal, 3> base_moments(const Params& params, const PrecisionContext& ctx);

/// Extends the three seeds to orders 0..2N with
///   mu_{j+6} = ((j+1) mu_j - 2 t1 mu_{j+2} - 4 t2 mu_{j+4}) / 6,
/// which is int (x^{j+1} w)' dx = 0 written out.
MomentTable extend_moments(const std::array<BigReal, 3>& base, const Params& params,
                           std::size_t N, const PrecisionContext& ctx);

/// base_moments + extend_moments.
MomentTable build_moments(const Params& params, std::size_t N, const PrecisionContext& ctx);

/// |mu[order] - quadrature of 2 x^order w| for an even order in the table.
BigReal moment_cross_check(const MomentTable& table, std::size_t order, const PrecisionContext& ctx);

}  // namespace sextic

#endif  // SEXTIC_MOMENTS_HPP
