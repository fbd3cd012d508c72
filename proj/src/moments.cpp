#include "sextic/moments.hpp"

#include <stdexcept>

namespace sextic {

Params Params::parse(std::string_view t1, std::string_view t2, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return Params{parse_decimal(t1), parse_decimal(t2)};
}

Params Params::from_ints(long t1, long t2, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return Params{BigReal(t1), BigReal(t2)};
}

BigReal potential(const Params& params, const BigReal& x) {
  const BigReal x2 = x * x;
  return x2 * (params.t1 + x2 * (params.t2 + x2));
}

BigReal tail_cutoff(const Params& params, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const BigReal budget = BigReal(ctx.working_digits()) * log(BigReal(10)) + abs(params.t1) +
                         abs(params.t2) + 10;
  return pow(budget, BigReal(1) / 6) + 2;
}

MomentTable::MomentTable(Params params, std::vector<BigReal> mu, PrecisionContext ctx)
    : params_(std::move(params)), mu_(std::move(mu)), ctx_(ctx) {
  if (mu_.empty()) throw std::invalid_argument("moment table must hold mu_0");
}

namespace {

BigReal weighted_moment_integral(const Params& params, unsigned order, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const QuadratureOptions options{tail_cutoff(params, ctx)};
  auto integrand = [&params, order](const BigReal& x) -> BigReal {
    return pow(x, order) * exp(-potential(params, x));
  };
  return 2 * de_quadrature(integrand, ctx, options);
}

}  // namespace

std::array<BigReal, 3> base_moments(const Params& params, const PrecisionContext& ctx) {
  return {weighted_moment_integral(params, 0, ctx), weighted_moment_integral(params, 2, ctx),
          weighted_moment_integral(params, 4, ctx)};
}

MomentTable extend_moments(const std::array<BigReal, 3>& base, const Params& params,
                           std::size_t N, const PrecisionContext& ctx) {
  if (N < 2) throw std::invalid_argument("extend_moments needs N >= 2");
  PrecisionScope scope(ctx);
  const std::size_t max_order = 2 * N;
  std::vector<BigReal> mu(max_order + 1, BigReal(0));
  mu[0] = base[0];
  mu[2] = base[1];
  mu[4] = base[2];
  for (std::size_t j = 0; j + 6 <= max_order; j += 2) {
    mu[j + 6] = (static_cast<unsigned long>(j + 1) * mu[j] - 2 * params.t1 * mu[j + 2] -
                 4 * params.t2 * mu[j + 4]) /
                6;
  }
  return MomentTable(params, std::move(mu), ctx);
}

MomentTable build_moments(const Params& params, std::size_t N, const PrecisionContext& ctx) {
  return extend_moments(base_moments(params, ctx), params, N, ctx);
}

BigReal moment_cross_check(const MomentTable& table, std::size_t order, const PrecisionContext& ctx) {
  if (order % 2 != 0 || order > table.max_order()) {
    throw std::out_of_range("moment_cross_check needs an even order within the table");
  }
  const BigReal direct = weighted_moment_integral(table.params(), static_cast<unsigned>(order), ctx);
  PrecisionScope scope(ctx);
  return abs(table[order] - direct);
}

}  // namespace sextic
