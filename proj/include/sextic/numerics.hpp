#ifndef SEXTIC_NUMERICS_HPP
#define SEXTIC_NUMERICS_HPP

// Arbitrary-precision substrate: working-precision context, dense
// polynomials with BigReal coefficients, and double-exponential quadrature
// on the half line.

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sextic {

using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

/// Raised when two operands built under different working precisions meet.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when the working precision is too small for the requested build.
/// `suggested_guard_digits` is a guard-digit count worth retrying with.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, unsigned suggested_guard_digits)
      : std::runtime_error(what), suggested_guard_digits_(suggested_guard_digits) {}
  unsigned suggested_guard_digits() const noexcept { return suggested_guard_digits_; }

 private:
  unsigned suggested_guard_digits_;
};

/// Raised when the tanh-sinh level cap is hit before two levels agree.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, BigReal previous, BigReal last)
      : std::runtime_error(what), previous_(std::move(previous)), last_(std::move(last)) {}
  const BigReal& previous_estimate() const noexcept { return previous_; }
  const BigReal& last_estimate() const noexcept { return last_; }

 private:
  BigReal previous_;
  BigReal last_;
};

/// Requested accuracy plus guard digits. Every BigReal produced inside a
/// PrecisionScope for this context carries `working_digits()` decimal digits.
class PrecisionContext {
 public:
  static constexpr unsigned kDefaultTarget = 50;
  static constexpr unsigned kDefaultGuard = 30;
  static constexpr unsigned kMinGuard = 10;

  PrecisionContext() : PrecisionContext(kDefaultTarget, kDefaultGuard) {}
  PrecisionContext(unsigned target_digits, unsigned guard_digits);

  /// target + max(30, ceil(factor * N)): Hankel construction loses roughly
  /// one digit per polynomial degree for this weight.
  static PrecisionContext for_order(unsigned target_digits, std::size_t max_index,
                                    double digits_per_index = 1.2);

  unsigned target_digits() const noexcept { return target_; }
  unsigned guard_digits() const noexcept { return guard_; }
  unsigned working_digits() const noexcept { return target_ + guard_; }

  PrecisionContext with_extra_guard(unsigned extra) const {
    return PrecisionContext(target_, guard_ + extra);
  }

  /// 10^(-exponent) at working precision; callers must hold a scope.
  static BigReal pow10_neg(int exponent);

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  unsigned target_;
  unsigned guard_;
};

/// Installs a context's working precision as the default for newly created
/// BigReal values and restores the previous default on destruction. The
/// default is process-wide, so scopes with different precisions must not be
/// active on two threads at once.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Parses a decimal literal directly at the current default precision.
BigReal parse_decimal(std::string_view text);

/// Decimal rendering with `significant` digits. Exact zero renders as "0".
/// Output is locale-independent.
std::string to_decimal(const BigReal& x, unsigned significant);

/// Dense polynomial, coeffs[k] multiplies x^k. Each polynomial records the
/// working precision it was created under; binary operations on polynomials
/// from different precisions throw ContractViolation.
class Polynomial {
 public:
  Polynomial();  // the zero polynomial at the current default precision
  explicit Polynomial(std::vector<BigReal> coeffs);
  Polynomial(std::initializer_list<BigReal> coeffs);

  static Polynomial monomial(std::size_t degree, const BigReal& coeff);

  const std::vector<BigReal>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Highest index with a stored coefficient; 0 for the empty polynomial.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  unsigned digits() const noexcept { return digits_; }

  /// Coefficient of x^k, zero beyond the stored range.
  BigReal operator[](std::size_t k) const;

  Polynomial derivative() const;
  BigReal evaluate(const BigReal& x) const;
  BigReal max_abs_coeff() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const BigReal& s, const Polynomial& p);
  friend Polynomial operator-(const Polynomial& p);

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  /// Multiplication by x^k.
  Polynomial shifted(std::size_t k) const;

 private:
  std::vector<BigReal> coeffs_;
  unsigned digits_;
};

enum class PolyOp { add, sub, mul };

/// Binary dispatcher used by the bindings and CLI-facing code.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

using Integrand = std::function<BigReal(const BigReal&)>;

struct QuadratureOptions {
  /// Integration stops at this abscissa; the integrand must be negligible beyond.
  BigReal upper;
  unsigned max_level = 14;
};

/// Tanh-sinh quadrature of f over [0, options.upper]. Levels halve the step
/// until successive estimates agree to 10^(-working_digits + 5).
BigReal de_quadrature(const Integrand& f, const PrecisionContext& ctx,
                      const QuadratureOptions& options);

}  // namespace sextic

#endif  // SEXTIC_NUMERICS_HPP
