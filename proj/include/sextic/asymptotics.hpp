#ifndef SEXTIC_ASYMPTOTICS_HPP
#define SEXTIC_ASYMPTOTICS_HPP

// Coulomb-fluid quantities and truncated large-n expansions for the sextic
// Freud weight, with tools to measure how fast the truncation error decays
// against exact finite-n values.

#include "sextic/moments.hpp"
#include "sextic/orthopoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sextic {

/// Equilibrium support (-b, b) for total mass n: u = b^2 is the positive root
/// of 15u^3 + 12 t2 u^2 + 8 t1 u - 16 n = 0 (the largest one when three are
/// real). A is the Lagrange multiplier of the mass constraint.
struct EndpointSolution {
  BigReal n_value;
  Params params;
  BigReal u;
  /// Cardano auxiliary; empty when its square root would be imaginary.
  std::optional<BigReal> phi;
  /// u from the closed radical form before Newton polishing, when phi is real.
  std::optional<BigReal> u_closed_form;
  BigReal A;
};

/// Cubic residual |15u^3 + 12 t2 u^2 + 8 t1 u - 16n| / (16n).
BigReal endpoint_residual(const EndpointSolution& sol);

EndpointSolution solve_endpoint(const BigReal& n, const Params& params, const PrecisionContext& ctx);

/// A = u (5u^2 + 6 t2 u + 8 t1) / 16 - n ln(u/4).
BigReal lagrange_multiplier(const EndpointSolution& sol);

/// True when x v'(x) is positive and increasing on (0, inf): t1 >= 0 and
/// t2 >= 0, or t2 < 0 and t1 >= 4 t2^2 / 9. Outside this region the
/// expansions still evaluate but are flagged.
bool is_single_cut(const Params& params);
const char* regime_label(const Params& params);

enum class Quantity { u_quarter, lagrange_A, beta, p, log_hn, log_Dn };

/// Accepts the canonical names (u_quarter, lagrange_A, beta, p, log_hn,
/// log_Dn) and the short CLI spellings (u, A, logh, logD).
Quantity parse_quantity(std::string_view name);
std::string quantity_name(Quantity q);

/// coeff * n^(num/den) * (ln n)^log_power
struct SeriesTerm {
  BigReal coeff;
  int num = 0;
  int den = 1;
  int log_power = 0;
};

struct Expansion {
  std::vector<SeriesTerm> terms;
  /// The omitted remainder is O(n^-(remainder_num / remainder_den)).
  int remainder_num = 0;
  int remainder_den = 1;
  double remainder_exponent() const { return static_cast<double>(remainder_num) / remainder_den; }
};

/// Coefficient tables of every truncated expansion at fixed (t1, t2).
class AsymptoticModel {
 public:
  static AsymptoticModel build(const Params& params, const PrecisionContext& ctx);

  const Params& params() const noexcept { return params_; }
  const PrecisionContext& context() const noexcept { return ctx_; }
  const BigReal& kappa() const noexcept { return kappa_; }  // 60^(1/3)
  const BigReal& zeta_prime_neg1() const noexcept { return zeta_prime_; }
  const BigReal& C0() const noexcept { return c_[0]; }
  const BigReal& C1() const noexcept { return c_[1]; }
  const BigReal& C2() const noexcept { return c_[2]; }
  const BigReal& C3() const noexcept { return c_[3]; }
  const Expansion& expansion(Quantity q) const { return expansions_.at(q); }

 private:
  Params params_;
  PrecisionContext ctx_;
  BigReal kappa_;
  BigReal zeta_prime_;
  BigReal c_[4];
  std::map<Quantity, Expansion> expansions_;
};

/// Sums the truncated series at a (possibly non-integer) n >= 1.
BigReal eval_expansion(Quantity quantity, const BigReal& n, const AsymptoticModel& model);

/// Exact finite-n value of a quantity: beta, p, log_hn and log_Dn come from
/// the table, u_quarter and lagrange_A from solve_endpoint.
BigReal exact_value(Quantity quantity, std::size_t n, const RecurrenceTable& table);

struct DecayRow {
  std::size_t n = 0;
  BigReal exact;
  BigReal asym;
  BigReal error;
  /// log2(e(n/2) / e(n)); present on rows whose half is also in the list.
  std::optional<double> fitted_order;
  /// Set when e(n/2) or e(n) is zero to the target precision (below
  /// 10^-target_digits relative to the value) so no order can be fitted.
  bool exact_match = false;
  /// |fitted_order - remainder exponent| <= 0.4.
  std::optional<bool> within_tolerance;
};

struct DecayReport {
  Quantity quantity = Quantity::beta;
  double expected_order = 0;
  bool single_cut = true;
  std::vector<DecayRow> rows;
  /// All fitted pairs within tolerance, and at least one pair fitted or exact.
  bool pass() const;
};

inline constexpr double kOrderFitWindow = 0.4;

/// n_list must be strictly increasing and contain at least one pair in
/// ratio 2; the table must reach max(n_list) + 2.
DecayReport error_decay_report(Quantity quantity, const std::vector<std::size_t>& n_list,
                               const RecurrenceTable& table, const AsymptoticModel& model);

/// zeta'(-1) = 1/12 - ln A_G with the Glaisher-Kinkelin constant from an
/// Euler-Maclaurin evaluation of sum k ln k.
BigReal zeta_prime_neg1(const PrecisionContext& ctx);

}  // namespace sextic

#endif  // SEXTIC_ASYMPTOTICS_HPP
