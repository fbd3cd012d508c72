#ifndef SEXTIC_IDENTITIES_HPP
#define SEXTIC_IDENTITIES_HPP

// Residual checks of the exact structure satisfied by the sextic Freud
// polynomials: ladder operators, compatibility identities, the fourth-order
// string equation for beta_n, the second-order ODE for P_n, the closed form of
// p(n), and d/dt2 ln D_n = -sum_{j<n} R_j.
//
// Every residual is a polynomial-coefficient or scalar residual; nothing is
// sampled at points. Relative residuals are scaled by the largest magnitude
// term entering the identity, so tolerances carry over between precisions.

#include "sextic/moments.hpp"
#include "sextic/orthopoly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sextic {

/// v(x) = x^6 + t2 x^4 + t1 x^2 as a polynomial.
Polynomial potential_polynomial(const Params& params);

enum class LadderVariant {
  beta_form,       // A_n, B_n written in beta_{n-1} .. beta_{n+2}
  auxiliary_form,  // A_n, B_n written in beta_n, beta_{n+1}, R_n, r_n
};

/// A_n(x) = 6x^4 + ... (even, degree 4), B_n(x) = 6 beta_n x^3 + ... (odd, degree 3).
struct LadderCoefficients {
  std::size_t n = 0;
  Polynomial A;
  Polynomial B;
};

/// Valid for 0 <= n <= N - 2. At n = 0 the beta-form product beta_{-1} beta_0
/// is taken as zero and B_0 = 0.
LadderCoefficients ladder_coeffs(const RecurrenceTable& table, std::size_t n,
                                 LadderVariant variant = LadderVariant::beta_form);

struct ResidualReport {
  std::string check_name;
  std::size_t n_first = 0;
  std::size_t n_last = 0;
  std::size_t worst_n = 0;  // index with the largest relative residual
  BigReal max_abs_residual;
  BigReal max_rel_residual;
  bool pass = false;

  /// Folds another report into this one, keeping the worst residuals.
  void absorb(const ResidualReport& other);
};

/// Relative tolerance used when none is given: 10^-(target_digits - 15).
BigReal default_tolerance(const PrecisionContext& ctx);

/// Lowering and raising operator residuals (worst of the two), 1 <= n <= N-2.
ResidualReport verify_ladder(const RecurrenceTable& table, std::size_t n,
                             std::optional<BigReal> tol = std::nullopt);

/// Named scalar residuals of the compatibility identities at one index:
/// R_n = r_n + r_{n+1}, the x^6 identity for r_n, and the x^4, x^2 and x^0
/// power identities. 2 <= n <= N-2.
struct CompatibilityResidual {
  std::string name;
  BigReal abs_residual;
  BigReal rel_residual;
};
std::vector<CompatibilityResidual> compatibility_residuals(const RecurrenceTable& table,
                                                           std::size_t n);
ResidualReport verify_compatibility(const RecurrenceTable& table, std::size_t n,
                                    std::optional<BigReal> tol = std::nullopt);

/// Left-hand side of the fourth-order string equation at index n; it equals n.
/// beta_{n-2} is read as zero at n = 1 (it only ever multiplies beta_0 = 0).
BigReal string_equation_lhs(const RecurrenceTable& table, std::size_t n);

/// |LHS(n) - n| / n, 1 <= n <= N-2.
ResidualReport verify_dpainleve(const RecurrenceTable& table, std::size_t n,
                                std::optional<BigReal> tol = std::nullopt);

/// A_n P'' - (v' A_n + A_n') P' + (B_n' A_n - B_n^2 A_n - v' B_n A_n
///   + beta_n A_n^2 A_{n-1} - A_n' B_n) P, scaled by the largest coefficient of
/// beta_n A_n^2 A_{n-1} P_n. 1 <= n <= N-2.
Polynomial ode_residual_polynomial(const RecurrenceTable& table, std::size_t n);
ResidualReport verify_ode(const RecurrenceTable& table, std::size_t n,
                          std::optional<BigReal> tol = std::nullopt);

/// p(n) expressed through beta_{n-2} .. beta_{n+2}.
BigReal p_closed_form(const RecurrenceTable& table, std::size_t n);
ResidualReport verify_p_formula(const RecurrenceTable& table, std::size_t n,
                                std::optional<BigReal> tol = std::nullopt);

/// d/dt2 ln D_n written in beta_{n-2} .. beta_{n+2}.
BigReal t2_derivative_closed_form(const RecurrenceTable& table, std::size_t n);

struct T2DerivativeCheck {
  BigReal central_difference;
  BigReal minus_sum_r;      // -sum_{j<n} R_j
  BigReal closed_form;      // beta-only expression
  ResidualReport report;    // worst of the three pairwise relative gaps
};

/// Rebuilds the pipeline at t2 +/- step and compares the central difference of
/// ln D_n with -sum R_j and with the closed form. Throws PrecisionExhausted if
/// rounding in the difference quotient would swamp step^2.
T2DerivativeCheck verify_t2_derivative(const Params& params, std::size_t n, const BigReal& step,
                                       const PrecisionContext& ctx, const BigReal& tol);

/// Names accepted by run_check: dpi, ladder, ode, compat, pform, dt2.
inline constexpr std::array<const char*, 6> kCheckNames = {"dpi", "ladder", "ode",
                                                           "compat", "pform", "dt2"};

/// Runs one named check over 2 <= n <= N-2 and returns the folded report.
/// dt2 differences ln D_n with step 1e-10 and defaults to tolerance 1e-18.
ResidualReport run_check(const std::string& name, const RecurrenceTable& table,
                         std::optional<BigReal> tol = std::nullopt);

}  // namespace sextic

#endif  // SEXTIC_IDENTITIES_HPP
